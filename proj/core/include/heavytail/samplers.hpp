// Exact samplers for every family, organised as a registry of "recipes":
// named product/mixture constructions, each stated as a self-contained
// distributional equation and drawn by exactly that construction.
//
// Notation used in the recipe equations:
//   S(d), S'(d)  independent positive stable, Laplace transform e^{-s^d}
//   Z(a)         symmetric stable, characteristic function e^{-|t|^a}
//   W(g)         Weibull, survival e^{-x^g};  E = W(1) exponential
//   N            standard normal;  |N| half-normal;  Lap standard Laplace
//   K(r)         the self-reciprocal kernel law with density
//                sin(pi r)/(pi r [x^2 + 2x cos(pi r) + 1]), K(1) := 1
//   Q(a,a')      = K(a/a')^{1/a};  Q(a,a) := 1
//   M(d)         Mittag-Leffler, Laplace transform 1/(1+s^d)
//   L(a)         Linnik, characteristic function 1/(1+|t|^a)
//   TM(d)        symmetrised (two-sided) Mittag-Leffler
//   H(d)         = 2 E K(d)^{2/d} = 2 E (S(d)/S'(d))^2
//
// All equalities are in distribution and exact; every recipe for the same
// (family, parameters) is interchangeable, which the verify module tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heavytail/families.hpp"
#include "heavytail/rng.hpp"

namespace heavytail::samplers {

// --- mixing-law primitives -------------------------------------------

// K(rho) by closed-form inverse CDF; rho = 1 degenerates to 1.
double draw_k(double rho, RngStream& rng);

// Q(alpha, alpha') = K(alpha/alpha')^{1/alpha}; equal indices give 1.
double draw_q(double alpha, double alpha_prime, RngStream& rng);

// S(alpha)/S'(alpha) with two independent Kanter draws; alpha = 1 gives 1.
double draw_stable_ratio(double alpha, RngStream& rng);

// H(delta) = 2 E (S/S')^2, the literal construction.
double draw_h_delta(double delta, RngStream& rng);

// 1/S(alpha): the inverse-stable mixing variable.
double draw_inverse_stable(double alpha, RngStream& rng);

// One draw from a primitive family (Exponential, Weibull, Rayleigh,
// Laplace, Normal, HalfNormal, PositiveStable, SymmetricStable,
// Geometric).  Throws std::invalid_argument for composite families.
double draw_primitive(const FamilySpec& spec, RngStream& rng);

// --- recipe registry ---------------------------------------------------

struct Recipe {
  std::string id;         // e.g. "ML_VIA_K_EXP"
  Family target;          // family the recipe samples
  std::string equation;   // self-contained distributional identity
  std::string method;     // algorithm citations
  bool (*valid)(const FamilySpec&);             // parameter admissibility
  double (*draw)(const FamilySpec&, RngStream&);  // one exact draw
};

const std::vector<Recipe>& recipe_registry();

// nullptr if unknown.
const Recipe* find_recipe(const std::string& id);

// Throws std::invalid_argument listing registered ids if unknown.
const Recipe& require_recipe(const std::string& id);

// --- batch sampling ----------------------------------------------------

struct SampleBatch {
  std::string recipe_id;
  FamilySpec target;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> values;
};

// Deterministic batch draw: the output is a pure function of
// (recipe, target, n, seed, stream).  Work is sharded in fixed 65536-value
// chunks, one derived substream per chunk, so any `threads` value (>= 1)
// produces bitwise-identical results.  n is capped at 2^31 - 1.
SampleBatch sample(const std::string& recipe_id, const FamilySpec& target,
                   std::size_t n, std::uint64_t seed, std::uint64_t stream,
                   int threads = 1);

}  // namespace heavytail::samplers
