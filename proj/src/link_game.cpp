#include "nctopo/link_game.hpp"

#include <algorithm>
#include <stdexcept>

namespace nctopo::link_game {

double closeness(double delta) { return 1.0 / (delta * delta + 1.0); }

double reward(const Scenario& s, NodeId i, NodeId j, NodeId d) {
  if (i == j) throw std::invalid_argument("reward: i == j");
  return closeness(euclidean_distance(s, j, d)) -
         closeness(euclidean_distance(s, i, d));
}

double cost(int a_i, int a_j, double lambda) {
  if (a_i == 0) return 0.0;
  return a_j == 1 ? lambda / 2.0 : lambda;
}

double utility(int a_i, int a_j, double r_i, double lambda) {
  return a_i * r_i - cost(a_i, a_j, lambda);
}

PayoffTable make_table(double r_i, double r_j, double lambda) {
  PayoffTable t;
  t.lambda = lambda;
  t.r_i = r_i;
  t.r_j = r_j;
  for (int a_i = 0; a_i < 2; ++a_i) {
    for (int a_j = 0; a_j < 2; ++a_j) {
      t.u_i[a_i][a_j] = utility(a_i, a_j, r_i, lambda);
      t.u_j[a_i][a_j] = utility(a_j, a_i, r_j, lambda);
    }
  }
  return t;
}

PayoffTable build_payoff_table(const Scenario& s, NodeId i, NodeId j, NodeId d,
                               double lambda) {
  PayoffTable t = make_table(reward(s, i, j, d), reward(s, j, i, d), lambda);
  t.i = i;
  t.j = j;
  t.d = d;
  return t;
}

std::vector<ActionProfile> enumerate_pure_ne(const PayoffTable& t) {
  std::vector<ActionProfile> out;
  for (int a_i = 0; a_i < 2; ++a_i) {
    for (int a_j = 0; a_j < 2; ++a_j) {
      const bool i_stays = t.u_i[1 - a_i][a_j] <= t.u_i[a_i][a_j] + tie_tol;
      const bool j_stays = t.u_j[a_i][1 - a_j] <= t.u_j[a_i][a_j] + tie_tol;
      if (i_stays && j_stays) out.push_back({a_i, a_j});
    }
  }
  return out;
}

ActionProfile best_response_profile(const PayoffTable& t, int* sweeps_out) {
  ActionProfile p{0, 0};
  int sweeps = 0;
  for (int iter = 0; iter < 4; ++iter) {
    const ActionProfile before = p;
    // i responds first, then j sees the updated a_i; ties keep the current
    // action, which pins the least NE.
    if (t.u_i[1 - p.a_i][p.a_j] > t.u_i[p.a_i][p.a_j] + tie_tol) p.a_i = 1 - p.a_i;
    if (t.u_j[p.a_i][1 - p.a_j] > t.u_j[p.a_i][p.a_j] + tie_tol) p.a_j = 1 - p.a_j;
    if (p == before) break;
    ++sweeps;
  }
  if (sweeps_out != nullptr) *sweeps_out = sweeps;
  return p;
}

bool verify_pure_dominance(const PayoffTable& t, int grid_resolution) {
  if (grid_resolution < 2) {
    throw std::invalid_argument("verify_pure_dominance: grid_resolution < 2");
  }
  const int g = grid_resolution;
  // For player p facing opponent mixture alpha: expected utilities of the two
  // pure actions; any own mixture is a convex combination of them.
  for (int player = 0; player < 2; ++player) {
    for (int ko = 0; ko < g; ++ko) {
      const double alpha = static_cast<double>(ko) / (g - 1);
      double e0, e1;
      if (player == 0) {
        e0 = (1 - alpha) * t.u_i[0][0] + alpha * t.u_i[0][1];
        e1 = (1 - alpha) * t.u_i[1][0] + alpha * t.u_i[1][1];
      } else {
        e0 = (1 - alpha) * t.u_j[0][0] + alpha * t.u_j[1][0];
        e1 = (1 - alpha) * t.u_j[0][1] + alpha * t.u_j[1][1];
      }
      const double best = std::max(e0, e1);
      for (int km = 0; km < g; ++km) {
        const double mix = static_cast<double>(km) / (g - 1);
        const double eu = (1 - mix) * e0 + mix * e1;
        if (eu > best + tie_tol) return false;
      }
    }
  }
  return true;
}

}  // namespace nctopo::link_game
