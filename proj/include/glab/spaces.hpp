#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "glab/literal.hpp"
#include "glab/natural.hpp"

namespace glab {

/// p(n) = value of eval(index, n, budget); partial where the budget runs out.
struct Generated {
  Natural index;
  std::uint64_t budget = 0;
  friend bool operator==(const Generated&, const Generated&) = default;
};

using SeqDescriptor = std::variant<Literal, Generated>;

/// `lit prefix=1,2,3 tail=const:7`, `lit tail=per:0,1`, `gen index=412 budget=1000`.
SeqDescriptor parse_descriptor(std::string_view text);
std::string to_text(const SeqDescriptor& d);

/// nullopt marks a query the stream could not answer within its budget.
using MaybeValue = std::optional<std::uint64_t>;

/// Read-only view of a sequence: a descriptor or something derived from
/// one. Queries are deterministic and safe to issue from several threads.
class StreamView {
 public:
  using Getter = std::function<MaybeValue(std::uint64_t)>;
  using RangeOracle = std::function<bool(std::uint64_t)>;

  StreamView() = default;
  explicit StreamView(SeqDescriptor d);
  /// A derived stream. `in_range`, when given, must decide exactly whether a
  /// value is ever produced.
  StreamView(Getter get, RangeOracle in_range = nullptr, std::string label = "derived");

  MaybeValue get(std::uint64_t n) const;
  /// The values at 0..n, or nullopt at the first partial position.
  std::optional<std::vector<std::uint64_t>> prefix(std::uint64_t n) const;

  const SeqDescriptor* descriptor() const { return descriptor_ ? &*descriptor_ : nullptr; }
  const Literal* literal() const;
  bool has_range_oracle() const { return static_cast<bool>(in_range_); }
  /// Requires has_range_oracle().
  bool in_range(std::uint64_t v) const;
  const std::string& label() const { return label_; }

 private:
  std::optional<SeqDescriptor> descriptor_;
  Getter get_;
  RangeOracle in_range_;
  std::string label_;
};

MaybeValue stream_get(const StreamView& s, std::uint64_t n);

/// <p,q>(2n) = p(n), <p,q>(2n+1) = q(n).
StreamView pair_streams(const StreamView& p, const StreamView& q);
/// <p_0,p_1,...>(pair(n,k)) = p_n(k).
StreamView tuple_streams(std::function<StreamView(std::uint64_t)> family);
/// Component n of a tupled stream: k -> s(pair(n,k)).
StreamView project_stream(const StreamView& s, std::uint64_t n);
/// k -> s(stride * k + offset).
StreamView decimate(const StreamView& s, std::uint64_t stride, std::uint64_t offset);

/// Exact Literal versions of the interleaving and its inverse.
Literal interleave(const Literal& p, const Literal& q);
Literal decimate(const Literal& p, std::uint64_t stride, std::uint64_t offset);

/// A name that changes finitely often: stage j is active from its switch
/// time until the next one. The last stage is the limit name.
struct ConvergingName {
  std::vector<std::pair<std::uint64_t, SeqDescriptor>> stages;

  /// Throws std::invalid_argument unless nonempty with strictly increasing switch times.
  void validate() const;
  const SeqDescriptor& limit() const { return stages.back().second; }
};

const SeqDescriptor& name_at_stage(const ConvergingName& c, std::uint64_t t);

/// `stage@0 lit tail=const:1 stage@5 lit tail=const:2`
ConvergingName parse_converging_name(std::string_view text);
std::string to_text(const ConvergingName& c);

}  // namespace glab
