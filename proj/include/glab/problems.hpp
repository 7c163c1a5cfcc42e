#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "glab/natural.hpp"
#include "glab/oracles.hpp"
#include "glab/spaces.hpp"

namespace glab {

/// A sequence together with a natural-number parameter (K_N's bound, G_>='s bound).
struct SeqBound {
  StreamView seq;
  std::uint64_t m = 0;
};

/// A countable family given as one tupled stream; components below `width`
/// are the ones checked at desk scale.
struct Family {
  StreamView tupled;
  std::uint64_t width = 0;
};

/// A finite family (p_1, ..., p_n).
struct FiniteFamily {
  std::vector<StreamView> members;
};

using Payload = std::variant<StreamView, SeqBound, Family, FiniteFamily, ConvergingName>;

struct Instance {
  std::string id;
  Payload payload;
};

using Answer = Natural;

/// A multivalued problem at desk scale. All callbacks are pure.
///
/// `enumerate_answers` is exhaustive over the bounded universe: any answer
/// up to the problem's ceiling (or index bound) that verifies is listed.
struct ProblemSpec {
  std::string name;
  std::function<bool(const Instance&)> domain_check;
  std::function<bool(const Instance&, const Answer&)> verify;
  std::function<std::vector<Answer>(const Instance&)> enumerate_answers;
  std::function<Answer(const Instance&)> solve_ref;
};

/// The sequence of a sequence-shaped instance. A ConvergingName contributes
/// its limit name (jump input). Throws std::invalid_argument for other shapes.
StreamView sequence_of(const Instance& x);
/// Literal of a sequence-shaped instance, or nullptr.
const Literal* literal_of(const Instance& x);

ProblemSpec make_lpo();
/// The instance is the pairing <p_0, p_1> as one stream.
ProblemSpec make_llpo();
ProblemSpec make_lim_n();
/// Answers are listed up to `ceiling`.
ProblemSpec make_b(std::uint64_t ceiling);
ProblemSpec make_inf();
ProblemSpec make_min();
/// Needs a range oracle on the instance stream; answers listed up to `ceiling`.
ProblemSpec make_cn(std::uint64_t ceiling);
ProblemSpec make_kn();
ProblemSpec make_cl_n();
ProblemSpec make_bwt_n();
ProblemSpec make_liminf_n();

/// Instance: a FiniteFamily (p_0, ..., p_h) of Literals. Answer: the limit of
/// n -> min range(p_n), read off at the horizon h; the domain requires the
/// last two minima to agree.
ProblemSpec make_lim_minhat();

/// G answers are the window-verified indices within the universe, plus the
/// index carried by a Generated instance when it window-verifies.
ProblemSpec make_g(std::shared_ptr<const Oracle> oracle);
ProblemSpec make_kol(std::shared_ptr<const Oracle> oracle);
ProblemSpec make_g_geq(std::shared_ptr<const Oracle> oracle);
ProblemSpec make_kol_geq(std::shared_ptr<const Oracle> oracle);

/// Parallelization of G over a Family; the answer is encode_list of one
/// index per component below the width.
ProblemSpec make_ghat(std::shared_ptr<const Oracle> oracle);
/// G on finite families; the answer is encode_list of one index per member.
ProblemSpec make_gstar(std::shared_ptr<const Oracle> oracle);

/// Registered names: lpo, llpo, lim_n, b, inf, min, c_n, k_n, cl_n, bwt_n,
/// liminf_n, lim_minhat, g, kol, g_geq, kol_geq, ghat, gstar.
std::optional<ProblemSpec> make_problem(const std::string& name, std::shared_ptr<const Oracle> oracle,
                                        std::uint64_t ceiling);
std::vector<std::string> problem_names();

}  // namespace glab
