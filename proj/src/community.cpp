#include "citenet/community.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "citenet/error.hpp"
#include "citenet/rng.hpp"

namespace citenet {

namespace {

inline double plogp(double x) noexcept { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Per-node quantities the map equation needs, derived once from the flow.
struct NodeFlows {
    std::vector<double> visit;     // p_a
    std::vector<double> teleport;  // mass leaving a by uniform teleportation
    std::vector<double> link_out;  // total link flow leaving a
    double link_scale(const CitationGraph& g, NodeId a) const {
        return g.out_degree(a) == 0 ? 0.0 : link_out[a] / static_cast<double>(g.out_degree(a));
    }
};

NodeFlows node_flows(const CitationGraph& g, const FlowDistribution& flow) {
    const std::size_t n = g.node_count();
    const double tau = flow.teleport;
    NodeFlows f{flow.visit_rate, std::vector<double>(n), std::vector<double>(n)};
    for (NodeId a = 0; a < n; ++a) {
        const double p = flow.visit_rate[a];
        if (g.out_degree(a) == 0) {
            f.teleport[a] = p;
        } else {
            f.teleport[a] = tau * p;
            f.link_out[a] = (1.0 - tau) * p;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Optimizer state. A "level" is a graph of super-nodes (modules of the level
// below); level 0 is the citation graph itself.

struct Link {
    std::size_t target;
    double flow;
};

struct LevelGraph {
    std::vector<double> visit;
    std::vector<double> teleport;
    std::vector<double> nodes;  // original nodes represented
    std::vector<double> out_total;
    std::vector<std::vector<Link>> out;
    std::vector<std::vector<Link>> in;
    std::vector<std::vector<NodeId>> originals;

    std::size_t size() const noexcept { return visit.size(); }
};

LevelGraph base_level(const CitationGraph& g, const NodeFlows& f) {
    const std::size_t n = g.node_count();
    LevelGraph lg;
    lg.visit = f.visit;
    lg.teleport = f.teleport;
    lg.nodes.assign(n, 1.0);
    lg.out_total.assign(n, 0.0);
    lg.out.resize(n);
    lg.in.resize(n);
    lg.originals.resize(n);
    for (NodeId a = 0; a < n; ++a) {
        lg.originals[a] = {a};
        const double w = f.link_scale(g, a);
        for (NodeId b : g.successors(a)) {
            lg.out[a].push_back({b, w});
            lg.in[b].push_back({a, w});
            lg.out_total[a] += w;
        }
    }
    return lg;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::size_t>& module, std::size_t count) {
    LevelGraph next;
    next.visit.assign(count, 0.0);
    next.teleport.assign(count, 0.0);
    next.nodes.assign(count, 0.0);
    next.out_total.assign(count, 0.0);
    next.out.resize(count);
    next.in.resize(count);
    next.originals.resize(count);
    std::vector<std::map<std::size_t, double>> links(count);
    for (std::size_t s = 0; s < lg.size(); ++s) {
        const std::size_t m = module[s];
        next.visit[m] += lg.visit[s];
        next.teleport[m] += lg.teleport[s];
        next.nodes[m] += lg.nodes[s];
        next.originals[m].insert(next.originals[m].end(), lg.originals[s].begin(), lg.originals[s].end());
        for (const auto& l : lg.out[s])
            if (module[l.target] != m) links[m][module[l.target]] += l.flow;
    }
    for (std::size_t m = 0; m < count; ++m) {
        for (const auto& [t, w] : links[m]) {
            next.out[m].push_back({t, w});
            next.in[t].push_back({m, w});
            next.out_total[m] += w;
        }
    }
    return next;
}

constexpr std::size_t kDenseLevel = 256;

class ModuleState {
public:
    ModuleState(const LevelGraph& lg, double total_nodes, double node_entropy_term,
                std::vector<std::size_t> module)
        : lg_(lg), n_(total_nodes), node_term_(node_entropy_term), module_(std::move(module)) {
        const std::size_t k = lg.size();
        visit_.assign(k, 0.0);
        teleport_.assign(k, 0.0);
        count_.assign(k, 0.0);
        exit_links_.assign(k, 0.0);
        members_.assign(k, 0);
        for (std::size_t s = 0; s < k; ++s) {
            const std::size_t m = module_[s];
            visit_[m] += lg.visit[s];
            teleport_[m] += lg.teleport[s];
            count_[m] += lg.nodes[s];
            ++members_[m];
            for (const auto& l : lg.out[s])
                if (module_[l.target] != m) exit_links_[m] += l.flow;
        }
        for (std::size_t m = 0; m < k; ++m)
            if (members_[m] == 0) empty_.push_back(m);
        std::reverse(empty_.begin(), empty_.end());
        recompute_sums();
        out_to_.assign(k, 0.0);
        in_from_.assign(k, 0.0);
        is_touched_.assign(k, 0);
    }

    double codelength() const noexcept {
        return plogp(sum_exit_) - 2.0 * sum_plogp_exit_ - node_term_ + sum_plogp_exit_visit_;
    }

    void recompute_sums() {
        sum_exit_ = sum_plogp_exit_ = sum_plogp_exit_visit_ = 0.0;
        for (std::size_t m = 0; m < visit_.size(); ++m) {
            if (members_[m] == 0) continue;
            const double q = exit(m);
            sum_exit_ += q;
            sum_plogp_exit_ += plogp(q);
            sum_plogp_exit_visit_ += plogp(q + visit_[m]);
        }
    }

    // Tries every neighbouring module (and an empty one) for super-node s;
    // applies the best move if it lowers the codelength by more than
    // min_improvement. Returns the applied delta (0 when nothing moved).
    double try_move(std::size_t s, double min_improvement) {
        const std::size_t from = module_[s];
        touched_.clear();
        auto touch = [&](std::size_t m) {
            if (!is_touched_[m]) {
                is_touched_[m] = 1;
                touched_.push_back(m);
            }
        };
        for (const auto& l : lg_.out[s]) {
            const std::size_t m = module_[l.target];
            touch(m);
            out_to_[m] += l.flow;
        }
        for (const auto& l : lg_.in[s]) {
            const std::size_t m = module_[l.target];
            touch(m);
            in_from_[m] += l.flow;
        }

        const double out_from = out_to_[from];
        const double in_from = in_from_[from];
        const double ps = lg_.visit[s], ts = lg_.teleport[s], ns = lg_.nodes[s];
        const double out_total = lg_.out_total[s];

        // Module `from` without s.
        const double from_visit = visit_[from] - ps;
        const double from_tele = teleport_[from] - ts;
        const double from_count = count_[from] - ns;
        const double from_links = exit_links_[from] - (out_total - out_from) + in_from;
        const double old_from_exit = exit(from);
        const double new_from_exit = members_[from] == 1 ? 0.0 : exit_of(from_tele, from_count, from_links);

        double best_delta = 0.0;
        std::size_t best = from;
        double best_exit = 0.0, best_links = 0.0;

        auto evaluate = [&](std::size_t to, double out_to, double in_to) {
            const double to_links = exit_links_[to] + (out_total - out_to) - in_to;
            const double to_exit = exit_of(teleport_[to] + ts, count_[to] + ns, to_links);
            const double old_to_exit = members_[to] == 0 ? 0.0 : exit(to);

            const double sum_exit = sum_exit_ - old_from_exit - old_to_exit + new_from_exit + to_exit;
            const double sum_plogp_exit = sum_plogp_exit_ - plogp(old_from_exit) - plogp(old_to_exit) +
                                          plogp(new_from_exit) + plogp(to_exit);
            const double sum_plogp_exit_visit =
                sum_plogp_exit_visit_ - plogp(old_from_exit + visit_[from]) -
                (members_[to] == 0 ? 0.0 : plogp(old_to_exit + visit_[to])) +
                (members_[from] == 1 ? 0.0 : plogp(new_from_exit + from_visit)) +
                plogp(to_exit + visit_[to] + ps);
            const double after = plogp(sum_exit) - 2.0 * sum_plogp_exit - node_term_ + sum_plogp_exit_visit;
            const double delta = after - codelength();
            if (delta < best_delta) {
                best_delta = delta;
                best = to;
                best_exit = to_exit;
                best_links = to_links;
            }
        };

        for (std::size_t m : touched_)
            if (m != from) evaluate(m, out_to_[m], in_from_[m]);
        // Teleportation couples every pair of modules, so an unlinked merge can
        // still pay off. Affordable once the level is small.
        if (lg_.size() <= kDenseLevel)
            for (std::size_t m = 0; m < members_.size(); ++m)
                if (m != from && members_[m] > 0 && !is_touched_[m]) evaluate(m, 0.0, 0.0);
        if (members_[from] > 1 && !empty_.empty()) evaluate(empty_.back(), 0.0, 0.0);

        for (std::size_t m : touched_) {
            out_to_[m] = in_from_[m] = 0.0;
            is_touched_[m] = 0;
        }

        if (best == from || best_delta > -min_improvement) return 0.0;

        // Apply.
        const bool to_was_empty = members_[best] == 0;
        const double old_best_exit = to_was_empty ? 0.0 : exit(best);
        sum_exit_ += -old_from_exit - old_best_exit + new_from_exit + best_exit;
        sum_plogp_exit_ += -plogp(old_from_exit) - plogp(old_best_exit) + plogp(new_from_exit) + plogp(best_exit);
        sum_plogp_exit_visit_ += -plogp(old_from_exit + visit_[from]) -
                                 (to_was_empty ? 0.0 : plogp(old_best_exit + visit_[best])) +
                                 (members_[from] == 1 ? 0.0 : plogp(new_from_exit + from_visit)) +
                                 plogp(best_exit + visit_[best] + ps);

        visit_[from] = from_visit;
        teleport_[from] = from_tele;
        count_[from] = from_count;
        exit_links_[from] = from_links;
        --members_[from];
        if (members_[from] == 0) {
            visit_[from] = teleport_[from] = count_[from] = exit_links_[from] = 0.0;
            empty_.push_back(from);
        }
        if (to_was_empty) empty_.pop_back();
        visit_[best] += ps;
        teleport_[best] += ts;
        count_[best] += ns;
        exit_links_[best] = best_links;
        ++members_[best];
        module_[s] = best;
        return best_delta;
    }

    const std::vector<std::size_t>& modules() const noexcept { return module_; }

private:
    double exit_of(double teleport, double count, double links) const noexcept {
        return teleport * (n_ - count) / n_ + links;
    }
    double exit(std::size_t m) const noexcept { return exit_of(teleport_[m], count_[m], exit_links_[m]); }

    const LevelGraph& lg_;
    double n_;
    double node_term_;
    std::vector<std::size_t> module_;
    std::vector<double> visit_, teleport_, count_, exit_links_;
    std::vector<std::size_t> members_;
    std::vector<std::size_t> empty_;
    double sum_exit_ = 0.0, sum_plogp_exit_ = 0.0, sum_plogp_exit_visit_ = 0.0;
    std::vector<double> out_to_, in_from_;
    std::vector<std::size_t> touched_;
    std::vector<char> is_touched_;
};

}  // namespace

namespace {

struct TrialResult {
    std::vector<std::size_t> labels;  // per original node
    double codelength = 0.0;
    std::vector<double> history;
};

constexpr std::size_t kMaxSweeps = 10000;
constexpr std::size_t kMaxFineTunes = 64;

// Renumbers module ids to 0..k-1 in order of first appearance.
std::size_t compact(std::vector<std::size_t>& module) {
    std::map<std::size_t, std::size_t> remap;
    for (auto& m : module) {
        auto [it, inserted] = remap.try_emplace(m, remap.size());
        m = it->second;
    }
    return remap.size();
}

class TrialOptimizer {
public:
    TrialOptimizer(const CitationGraph& g, const NodeFlows& flows, double min_improvement,
                   std::uint64_t stream_seed, bool record)
        : base_(base_level(g, flows)),
          n_(static_cast<double>(g.node_count())),
          min_improvement_(min_improvement),
          rng_(stream_seed),
          record_(record) {
        for (double p : flows.visit) node_term_ += plogp(p);
    }

    TrialResult run() {
        std::vector<std::size_t> labels(base_.size());
        std::iota(labels.begin(), labels.end(), 0);
        double best = optimize(labels);
        for (std::size_t round = 0; round < kMaxFineTunes; ++round) {
            auto candidate = labels;
            const double length = optimize(candidate);
            if (length < best - min_improvement_) {
                best = length;
                labels = std::move(candidate);
            } else {
                break;
            }
        }
        return {std::move(labels), best, std::move(history_)};
    }

private:
    // Node moves at level 0 starting from `labels`, then repeated
    // aggregation with module moves until nothing merges. Rewrites labels.
    double optimize(std::vector<std::size_t>& labels) {
        const LevelGraph* level = &base_;
        LevelGraph owned;
        std::vector<std::size_t> start = labels;
        double length = 0.0;
        while (true) {
            ModuleState state(*level, n_, node_term_, start);
            length = local_moving(state, level->size());
            auto module = state.modules();
            const std::size_t count = compact(module);
            for (std::size_t s = 0; s < level->size(); ++s)
                for (NodeId a : level->originals[s]) labels[a] = module[s];
            if (count == level->size()) break;
            owned = aggregate(*level, module, count);
            level = &owned;
            start.resize(count);
            std::iota(start.begin(), start.end(), 0);
        }
        return length;
    }

    double local_moving(ModuleState& state, std::size_t size) {
        std::vector<std::size_t> order(size);
        std::iota(order.begin(), order.end(), 0);
        if (record_) history_.push_back(state.codelength());
        for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
            rng_.shuffle(std::span<std::size_t>(order));
            std::size_t moves = 0;
            for (std::size_t s : order) {
                if (state.try_move(s, min_improvement_) < 0.0) {
                    ++moves;
                    if (record_) history_.push_back(state.codelength());
                }
            }
            state.recompute_sums();
            if (moves == 0) break;
        }
        return state.codelength();
    }

    LevelGraph base_;
    double n_;
    double node_term_ = 0.0;
    double min_improvement_;
    Rng rng_;
    bool record_;
    std::vector<double> history_;
};

}  // namespace

FlowDistribution stationary_flow(const CitationGraph& g, double teleport, double tolerance,
                                 std::size_t max_iterations) {
    const std::size_t n = g.node_count();
    if (n == 0) throw InvalidArgument("stationary_flow: empty graph");
    if (!(teleport > 0.0 && teleport < 1.0)) throw InvalidArgument("teleportation must lie in (0, 1)");
    if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> rate(n, inv_n), next(n);
    FlowDistribution flow;
    flow.teleport = teleport;
    double residual = 0.0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v)
            if (g.out_degree(v) == 0) dangling += rate[v];
        const double uniform = (teleport + (1.0 - teleport) * dangling) * inv_n;
        std::fill(next.begin(), next.end(), uniform);
        for (NodeId u = 0; u < n; ++u) {
            if (g.out_degree(u) == 0) continue;
            const double share = (1.0 - teleport) * rate[u] / static_cast<double>(g.out_degree(u));
            for (NodeId v : g.successors(u)) next[v] += share;
        }
        const double total = std::accumulate(next.begin(), next.end(), 0.0);
        residual = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            next[v] /= total;
            residual += std::abs(next[v] - rate[v]);
        }
        rate.swap(next);
        if (residual < tolerance) {
            flow.visit_rate = std::move(rate);
            flow.iterations = it;
            flow.residual = residual;
            return flow;
        }
    }
    throw ConvergenceError("stationary_flow: no convergence after " + std::to_string(max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual);
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
    const std::size_t n = labels.size();
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> info;  // label -> (size, first member)
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = info.try_emplace(labels[v], 0, v);
        ++it->second.first;
    }
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> order(info.begin(), info.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first) return a.second.first > b.second.first;
        return a.second.second < b.second.second;
    });
    std::map<std::size_t, std::size_t> canonical;
    for (std::size_t i = 0; i < order.size(); ++i) canonical[order[i].first] = i;

    Partition p;
    p.labels_.resize(n);
    for (std::size_t v = 0; v < n; ++v) p.labels_[v] = canonical[labels[v]];
    p.count_ = order.size();
    return p;
}

Partition Partition::single_module(std::size_t n) {
    std::vector<std::size_t> labels(n, 0);
    return from_labels(labels);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return from_labels(labels);
}

std::vector<std::size_t> Partition::sizes() const {
    std::vector<std::size_t> s(count_, 0);
    for (auto l : labels_) ++s[l];
    return s;
}

std::vector<std::vector<NodeId>> Partition::members() const {
    std::vector<std::vector<NodeId>> m(count_);
    for (std::size_t v = 0; v < labels_.size(); ++v) m[labels_[v]].push_back(static_cast<NodeId>(v));
    return m;
}

Codelength codelength(const CitationGraph& g, const Partition& p, const FlowDistribution& flow) {
    const std::size_t n = g.node_count();
    if (p.node_count() != n || flow.visit_rate.size() != n)
        throw InvalidArgument("codelength: partition, flow and graph sizes differ");
    const NodeFlows f = node_flows(g, flow);
    const std::size_t k = p.community_count();
    std::vector<double> visit(k, 0.0), tele(k, 0.0), count(k, 0.0), links(k, 0.0), node_term(k, 0.0);
    for (NodeId a = 0; a < n; ++a) {
        const std::size_t m = p.community(a);
        visit[m] += f.visit[a];
        tele[m] += f.teleport[a];
        count[m] += 1.0;
        node_term[m] += plogp(f.visit[a]);
        const double w = f.link_scale(g, a);
        for (NodeId b : g.successors(a))
            if (p.community(b) != m) links[m] += w;
    }
    Codelength result;
    result.module_terms.resize(k);
    double total_exit = 0.0, plogp_exits = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t m = 0; m < k; ++m) {
        const double exit = tele[m] * (dn - count[m]) / dn + links[m];
        total_exit += exit;
        plogp_exits += plogp(exit);
        result.module_terms[m] = plogp(exit + visit[m]) - plogp(exit) - node_term[m];
    }
    result.index = plogp(total_exit) - plogp_exits;
    result.total = result.index + std::accumulate(result.module_terms.begin(), result.module_terms.end(), 0.0);
    return result;
}

Detection detect_communities(const CitationGraph& g, const DetectOptions& options) {
    if (g.empty()) throw InvalidArgument("detect_communities: empty graph");
    if (options.trials == 0) throw InvalidArgument("detect_communities: trials must be positive");

    Detection det;
    det.flow = stationary_flow(g, options.teleport);
    const NodeFlows flows = node_flows(g, det.flow);

    std::vector<TrialResult> results(options.trials);
    auto run_trial = [&](std::size_t t) {
        TrialOptimizer opt(g, flows, options.min_improvement, derive_seed(options.seed, t),
                           options.record_history);
        results[t] = opt.run();
    };
    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, options.trials);
    if (workers == 1) {
        for (std::size_t t = 0; t < options.trials; ++t) run_trial(t);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < options.trials; t += workers) run_trial(t);
            });
    }

    // Scores come from the full codelength so every trial is judged by the
    // same formula, independent of incremental bookkeeping.
    double best = 0.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
        Partition part = Partition::from_labels(results[t].labels);
        Codelength length = codelength(g, part, det.flow);
        det.trials.push_back({t, length.total, part.community_count(), std::move(results[t].history)});
        if (t == 0 || length.total < best) {
            best = length.total;
            det.best_trial = t;
            det.partition = std::move(part);
            det.codelength = std::move(length);
        }
    }
    return det;
}

std::string Detection::trial_log() const {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "codelength_bits: " << codelength.total << '\n'
        << "index_codelength_bits: " << codelength.index << '\n'
        << "communities: " << partition.community_count() << '\n'
        << "best_trial: " << best_trial << '\n'
        << "flow_iterations: " << flow.iterations << '\n'
        << "flow_residual: " << flow.residual << '\n';
    for (const auto& t : trials)
        out << "trial " << t.trial << ": codelength=" << t.codelength << " communities=" << t.communities
            << '\n';
    return out.str();
}

double nmi(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count()) throw InvalidArgument("nmi: partitions cover different node sets");
    const std::size_t n = a.node_count();
    if (n == 0 || a == b) return 1.0;
    const double dn = static_cast<double>(n);
    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    for (std::size_t v = 0; v < n; ++v) joint[{a.community(v), b.community(v)}] += 1.0;
    auto entropy = [&](const std::vector<std::size_t>& sizes) {
        double h = 0.0;
        for (auto s : sizes) h -= plogp(static_cast<double>(s) / dn);
        return h;
    };
    const auto sa = a.sizes(), sb = b.sizes();
    const double ha = entropy(sa), hb = entropy(sb);
    if (ha + hb == 0.0) return 1.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        const double pab = c / dn;
        const double pa = static_cast<double>(sa[key.first]) / dn;
        const double pb = static_cast<double>(sb[key.second]) / dn;
        mi += pab * std::log2(pab / (pa * pb));
    }
    return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

}  // namespace citenet
