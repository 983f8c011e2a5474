// Copyright 2026 hexqec contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hexqec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace hexqec {

namespace {

// Maximum-weight matching in O(n^3) with integer weights; 1-indexed nodes and
// w == 0 meaning "no edge".
class Blossom {
  public:
    explicit Blossom(int n)
        : n_(n),
          cap_(2 * n + 1),
          g_(static_cast<std::size_t>(cap_ * cap_)),
          lab_(cap_, 0),
          match_(cap_, 0),
          slack_(cap_, 0),
          st_(cap_, 0),
          pa_(cap_, 0),
          flo_from_(static_cast<std::size_t>(cap_ * (n + 1)), 0),
          s_(cap_, -1),
          vis_(cap_, 0),
          flo_(cap_) {
        for (int u = 0; u < cap_; ++u) {
            for (int v = 0; v < cap_; ++v) {
                g(u, v) = {u, v, 0};
            }
        }
    }

    void set_weight(int u, int v, std::int64_t w) {
        g(u, v).w = w;
        g(v, u).w = w;
    }

    int mate(int u) const { return match_[u]; }

    int solve() {
        std::fill(match_.begin(), match_.end(), 0);
        nx_ = n_;
        int matches = 0;
        for (int u = 0; u <= n_; ++u) {
            st_[u] = u;
            flo_[u].clear();
        }
        std::int64_t w_max = 0;
        for (int u = 1; u <= n_; ++u) {
            for (int v = 1; v <= n_; ++v) {
                from(u, v) = u == v ? u : 0;
                w_max = std::max(w_max, g(u, v).w);
            }
        }
        for (int u = 1; u <= n_; ++u) {
            lab_[u] = w_max;
        }
        while (matching()) {
            ++matches;
        }
        return matches;
    }

  private:
    struct Edge {
        int u;
        int v;
        std::int64_t w;
    };

    Edge& g(int u, int v) { return g_[static_cast<std::size_t>(u * cap_ + v)]; }
    int& from(int b, int x) { return flo_from_[static_cast<std::size_t>(b * (n_ + 1) + x)]; }

    std::int64_t e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[idx(e.u, e.v)].w * 2; }
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u * cap_ + v); }

    void update_slack(int u, int x) {
        if (slack_[x] == 0 || e_delta(g(u, x)) < e_delta(g(slack_[x], x))) {
            slack_[x] = u;
        }
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u) {
            if (g(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0) {
                update_slack(u, x);
            }
        }
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int y : flo_[x]) {
                q_push(y);
            }
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_) {
            for (int y : flo_[x]) {
                set_st(y, b);
            }
        }
    }

    int get_pr(int b, int xr) {
        auto& f = flo_[b];
        int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pr % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return static_cast<int>(f.size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g(u, v).v;
        if (u <= n_) {
            return;
        }
        Edge e = g(u, v);
        int xr = from(u, e.u);
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) {
            set_match(flo_[u][i], flo_[u][i ^ 1]);
        }
        set_match(xr, v);
        std::rotate(flo_[u].begin(), flo_[u].begin() + pr, flo_[u].end());
    }

    void augment(int u, int v) {
        while (true) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (xnv == 0) {
                return;
            }
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++stamp_; u != 0 || v != 0; std::swap(u, v)) {
            if (u == 0) {
                continue;
            }
            if (vis_[u] == stamp_) {
                return u;
            }
            vis_[u] = stamp_;
            u = st_[match_[u]];
            if (u != 0) {
                u = st_[pa_[u]];
            }
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= nx_ && st_[b] != 0) {
            ++b;
        }
        if (b > nx_) {
            ++nx_;
        }
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        auto& f = flo_[b];
        f.clear();
        f.push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            f.push_back(x);
            f.push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(f.begin() + 1, f.end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            f.push_back(x);
            f.push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= nx_; ++x) {
            g(b, x).w = 0;
            g(x, b).w = 0;
        }
        for (int x = 1; x <= n_; ++x) {
            from(b, x) = 0;
        }
        for (int xs : f) {
            for (int x = 1; x <= nx_; ++x) {
                if (g(b, x).w == 0 || e_delta(g(xs, x)) < e_delta(g(b, x))) {
                    g(b, x) = g(xs, x);
                    g(x, b) = g(x, xs);
                }
            }
            for (int x = 1; x <= n_; ++x) {
                if (from(xs, x) != 0) {
                    from(b, x) = xs;
                }
            }
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int x : flo_[b]) {
            set_st(x, x);
        }
        int xr = from(b, g(b, pa_[b]).u);
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flo_[b][i];
            int xns = flo_[b][i + 1];
            pa_[xs] = g(xns, xs).u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flo_[b].size(); ++i) {
            int xs = flo_[b][i];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        int u = st_[e.u];
        int v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = 0;
            slack_[nu] = 0;
            s_[nu] = 0;
            q_push(nu);
        } else if (s_[v] == 0) {
            int lca = get_lca(u, v);
            if (lca == 0) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching() {
        std::fill(s_.begin() + 1, s_.begin() + nx_ + 1, -1);
        std::fill(slack_.begin() + 1, slack_.begin() + nx_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= nx_; ++x) {
            if (st_[x] == x && match_[x] == 0) {
                pa_[x] = 0;
                s_[x] = 0;
                q_push(x);
            }
        }
        if (q_.empty()) {
            return false;
        }
        while (true) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (s_[st_[u]] == 1) {
                    continue;
                }
                for (int v = 1; v <= n_; ++v) {
                    if (g(u, v).w > 0 && st_[u] != st_[v]) {
                        if (e_delta(g(u, v)) == 0) {
                            if (on_found_edge(g(u, v))) {
                                return true;
                            }
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
                }
            }
            std::int64_t d = std::numeric_limits<std::int64_t>::max();
            for (int b = n_ + 1; b <= nx_; ++b) {
                if (st_[b] == b && s_[b] == 1) {
                    d = std::min(d, lab_[b] / 2);
                }
            }
            for (int x = 1; x <= nx_; ++x) {
                if (st_[x] == x && slack_[x] != 0) {
                    if (s_[x] == -1) {
                        d = std::min(d, e_delta(g(slack_[x], x)));
                    } else if (s_[x] == 0) {
                        d = std::min(d, e_delta(g(slack_[x], x)) / 2);
                    }
                }
            }
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d) {
                        return false;
                    }
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= nx_; ++b) {
                if (st_[b] == b) {
                    if (s_[st_[b]] == 0) {
                        lab_[b] += d * 2;
                    } else if (s_[st_[b]] == 1) {
                        lab_[b] -= d * 2;
                    }
                }
            }
            q_.clear();
            for (int x = 1; x <= nx_; ++x) {
                if (st_[x] == x && slack_[x] != 0 && st_[slack_[x]] != x && e_delta(g(slack_[x], x)) == 0) {
                    if (on_found_edge(g(slack_[x], x))) {
                        return true;
                    }
                }
            }
            for (int b = n_ + 1; b <= nx_; ++b) {
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) {
                    expand_blossom(b);
                }
            }
        }
    }

    int n_;
    int cap_;
    int nx_ = 0;
    int stamp_ = 0;
    std::vector<Edge> g_;
    std::vector<std::int64_t> lab_;
    std::vector<int> match_;
    std::vector<int> slack_;
    std::vector<int> st_;
    std::vector<int> pa_;
    std::vector<int> flo_from_;
    std::vector<int> s_;
    std::vector<int> vis_;
    std::vector<std::vector<int>> flo_;
    std::deque<int> q_;
};

constexpr double kQuantum = 1073741824.0;  // 2^30

void check_edges(std::uint32_t n, const std::vector<WeightedEdge>& edges) {
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n || e.u == e.v) {
            throw std::invalid_argument("matching edge has invalid endpoints");
        }
        if (!std::isfinite(e.weight) || e.weight < 0) {
            throw std::invalid_argument("matching edge weight must be finite and non-negative");
        }
    }
}

}  // namespace

std::vector<std::uint32_t> min_weight_perfect_matching(std::uint32_t num_nodes, const std::vector<WeightedEdge>& edges) {
    check_edges(num_nodes, edges);
    if (num_nodes % 2 != 0) {
        throw std::runtime_error("no perfect matching on an odd number of nodes");
    }
    if (num_nodes == 0) {
        return {};
    }
    double w_max = 0;
    for (const auto& e : edges) {
        w_max = std::max(w_max, e.weight);
    }
    const double scale = w_max > 0 ? kQuantum / w_max : 1.0;
    // Offset so every perfect matching outweighs every smaller one.
    const std::int64_t big = static_cast<std::int64_t>(kQuantum) * (num_nodes / 2 + 1) + 1;
    const int n = static_cast<int>(num_nodes);
    Blossom blossom(n);
    std::vector<std::int64_t> best(static_cast<std::size_t>(n) * n, 0);
    for (const auto& e : edges) {
        std::int64_t w = big - std::llround(e.weight * scale);
        auto& b1 = best[static_cast<std::size_t>(e.u) * n + e.v];
        if (w > b1) {
            b1 = w;
            best[static_cast<std::size_t>(e.v) * n + e.u] = w;
            blossom.set_weight(static_cast<int>(e.u) + 1, static_cast<int>(e.v) + 1, w);
        }
    }
    int matched = blossom.solve();
    if (static_cast<std::uint32_t>(matched) * 2 != num_nodes) {
        throw std::runtime_error("graph has no perfect matching");
    }
    std::vector<std::uint32_t> mate(num_nodes);
    for (int u = 1; u <= n; ++u) {
        mate[static_cast<std::size_t>(u - 1)] = static_cast<std::uint32_t>(blossom.mate(u) - 1);
    }
    return mate;
}

double brute_force_matching_weight(std::uint32_t num_nodes, const std::vector<WeightedEdge>& edges) {
    check_edges(num_nodes, edges);
    if (num_nodes > 16) {
        throw std::invalid_argument("brute force matching is limited to 16 nodes");
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> w(static_cast<std::size_t>(num_nodes) * num_nodes, inf);
    for (const auto& e : edges) {
        auto& x = w[static_cast<std::size_t>(e.u) * num_nodes + e.v];
        x = std::min(x, e.weight);
        w[static_cast<std::size_t>(e.v) * num_nodes + e.u] = x;
    }
    const std::uint32_t full = (1u << num_nodes) - 1;
    std::vector<double> dp(std::size_t{1} << num_nodes, inf);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (dp[mask] == inf) {
            continue;
        }
        std::uint32_t i = 0;
        while ((mask >> i) & 1u) {
            ++i;
        }
        for (std::uint32_t j = i + 1; j < num_nodes; ++j) {
            if ((mask >> j) & 1u) {
                continue;
            }
            double c = w[static_cast<std::size_t>(i) * num_nodes + j];
            if (c == inf) {
                continue;
            }
            auto next = mask | (1u << i) | (1u << j);
            dp[next] = std::min(dp[next], dp[mask] + c);
        }
    }
    return dp[full] == inf ? -1.0 : dp[full];
}

double matching_weight(const std::vector<std::uint32_t>& mate, const std::vector<WeightedEdge>& edges) {
    double total = 0;
    for (std::uint32_t u = 0; u < mate.size(); ++u) {
        if (mate[u] < u) {
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& e : edges) {
            if ((e.u == u && e.v == mate[u]) || (e.v == u && e.u == mate[u])) {
                best = std::min(best, e.weight);
            }
        }
        total += best;
    }
    return total;
}

}  // namespace hexqec
