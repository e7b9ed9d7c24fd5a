#include "glad/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "glad/rng.hpp"

namespace glad {

OracleResult brute_force_optimal(const Instance& inst, long long max_states) {
    inst.validate();
    const std::vector<VertexId> verts = inst.graph.vertices();
    const int n = static_cast<int>(verts.size());
    const int d = inst.network.size();

    // Guard |D|^|V| <= max_states without overflowing.
    {
        long double states = 1.0L;
        for (int k = 0; k < n; ++k) {
            states *= d;
            if (states > static_cast<long double>(max_states))
                throw TooLargeError("brute force state space " + std::to_string(d) + "^" +
                                    std::to_string(n) + " exceeds the cap of " +
                                    std::to_string(max_states));
        }
    }

    const CostDecomposition dec(inst);

    // Running state: digit per vertex (ascending id order), plus the cost of
    // the current assignment split into a finite part and a count of
    // unreachable cross links.
    std::vector<int> digits(n, 0);
    GraphLayout layout(inst.graph.capacity());
    for (VertexId v : verts) layout.assign(v, 0);
    double finite = dec.c0();
    for (VertexId v : verts) finite += dec.unary(v, 0);
    long bad = 0;  // all on one server: no cross links

    std::vector<int> best_digits = digits;
    double best_cost = finite;

    OracleResult out;
    out.states_examined = 1;

    if (n > 0 && d > 1) {
        // Loopless reflected mixed-radix Gray code; one digit steps by +-1
        // per visit, so re-pricing touches one vertex's unary entry and its
        // incident links only.
        std::vector<int> dir(n, 1);
        std::vector<int> focus(n + 1);
        for (int k = 0; k <= n; ++k) focus[k] = k;

        // Digit positions by vertex id for neighbor lookups.
        for (;;) {
            const int jj = focus[0];
            focus[0] = 0;
            if (jj == n) break;
            const int old_s = digits[jj];
            const int new_s = old_s + dir[jj];
            const VertexId w = verts[jj];

            finite += dec.unary(w, new_s) - dec.unary(w, old_s);
            for (VertexId u : inst.graph.neighbors(w)) {
                const ServerId su = layout.server_of(u);
                if (old_s != su) {
                    if (const auto c = dec.pairwise(old_s, su)) finite -= *c;
                    else --bad;
                }
                if (new_s != su) {
                    if (const auto c = dec.pairwise(new_s, su)) finite += *c;
                    else ++bad;
                }
            }
            digits[jj] = new_s;
            layout.assign(w, new_s);

            if (new_s == 0 || new_s == d - 1) {
                dir[jj] = -dir[jj];
                focus[jj] = focus[jj + 1];
                focus[jj + 1] = jj + 1;
            }
            ++out.states_examined;

            if (bad == 0) {
                const double tol = 1e-12 * std::max(1.0, std::fabs(best_cost));
                if (finite < best_cost - tol) {
                    best_cost = finite;
                    best_digits = digits;
                } else if (std::fabs(finite - best_cost) <= tol &&
                           std::lexicographical_compare(digits.begin(), digits.end(),
                                                        best_digits.begin(),
                                                        best_digits.end())) {
                    best_digits = digits;
                }
            }
        }
    }

    out.optimal_layout = GraphLayout(inst.graph.capacity());
    for (int k = 0; k < n; ++k) out.optimal_layout.assign(verts[k], best_digits[k]);
    out.optimal_cost = total_cost(out.optimal_layout, inst);
    return out;
}

GraphLayout random_layout(const Instance& inst, uint64_t seed) {
    Rng rng(seed);
    GraphLayout out(inst.graph.capacity());
    const int d = inst.network.size();
    for (VertexId v = 0; v < inst.graph.capacity(); ++v)
        if (inst.graph.has_vertex(v)) out.assign(v, static_cast<ServerId>(rng.below(d)));
    return out;
}

GraphLayout greedy_layout(const Instance& inst) {
    GraphLayout out(inst.graph.capacity());
    const int d = inst.network.size();
    for (VertexId v = 0; v < inst.graph.capacity(); ++v) {
        if (!inst.graph.has_vertex(v)) continue;
        ServerId arg = 0;
        double best = inst.upload_cost[v][0] + vertex_compute_cost(v, 0, inst) +
                      inst.network.server(0).rho;
        for (ServerId i = 1; i < d; ++i) {
            const double c = inst.upload_cost[v][i] + vertex_compute_cost(v, i, inst) +
                             inst.network.server(i).rho;
            if (c < best) {
                best = c;
                arg = i;
            }
        }
        out.assign(v, arg);
    }
    return out;
}

}  // namespace glad
