#pragma once

#include <compare>
#include <vector>

#include "nctopo/geometry.hpp"

namespace nctopo::link_game {

// Absolute tolerance for payoff comparisons: boundary ties (e.g. R == lambda)
// must be detected reliably.
inline constexpr double tie_tol = 1e-12;

struct ActionProfile {
  int a_i = 0;  // 0 or 1
  int a_j = 0;
  auto operator<=>(const ActionProfile&) const = default;
};

// 2x2 normal form of one pairwise link formation game. u_i/u_j are indexed
// [a_i][a_j].
struct PayoffTable {
  NodeId i = 0;
  NodeId j = 0;
  NodeId d = 0;
  double lambda = 0.0;
  double r_i = 0.0;
  double r_j = 0.0;
  double u_i[2][2] = {};
  double u_j[2][2] = {};
};

// Closeness of a node at distance delta from a destination: 1 / (delta^2 + 1).
double closeness(double delta);

// Reward to i for a link i->j toward destination d: closeness gain of the far
// endpoint over the near one. Positive iff j is strictly closer to d.
double reward(const Scenario& s, NodeId i, NodeId j, NodeId d);

// Link cost borne by i: lambda if i forms alone, lambda/2 if both form, 0 if
// i does not form.
double cost(int a_i, int a_j, double lambda);

// Quasi-linear utility of i: a_i * r_i - cost(a_i, a_j, lambda).
double utility(int a_i, int a_j, double r_i, double lambda);

// Table from raw rewards (no scenario metadata).
PayoffTable make_table(double r_i, double r_j, double lambda);

PayoffTable build_payoff_table(const Scenario& s, NodeId i, NodeId j, NodeId d,
                               double lambda);

// All pure Nash equilibria under weak inequality: no unilateral deviation
// strictly improves (beyond tie_tol). Never empty. Profiles in fixed order
// (0,0),(0,1),(1,0),(1,1).
std::vector<ActionProfile> enumerate_pure_ne(const PayoffTable& t);

// Alternating best response from (0,0), ties resolved toward the current
// action; returns the componentwise-least pure NE. `sweeps_out`, if given,
// receives the number of profile-changing sweeps (always <= 2).
ActionProfile best_response_profile(const PayoffTable& t,
                                    int* sweeps_out = nullptr);

// Checks on an alpha grid (grid_resolution points per axis) that for each
// player the better pure action weakly dominates every grid mixture against
// every grid opponent mixture.
bool verify_pure_dominance(const PayoffTable& t, int grid_resolution);

}  // namespace nctopo::link_game
