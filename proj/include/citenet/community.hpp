#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

/// Stationary visit rates of the teleporting random walk.
struct FlowDistribution {
    std::vector<double> visit_rate;
    double teleport = 0.15;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Power iteration: with probability 1 - teleport follow a uniform out-edge
/// (dangling nodes teleport), otherwise jump to a uniform node. Stops when
/// the L1 change drops below tolerance; throws ConvergenceError after
/// max_iterations.
FlowDistribution stationary_flow(const CitationGraph& g, double teleport = 0.15,
                                 double tolerance = 1e-15, std::size_t max_iterations = 100000);

/// Node-to-community assignment with canonical labels: communities ordered by
/// descending size, ties by smallest member (NodeId order is id order).
class Partition {
public:
    Partition() = default;

    /// Any integer labels; relabelled canonically.
    static Partition from_labels(std::span<const std::size_t> labels);
    static Partition single_module(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t community_count() const noexcept { return count_; }
    std::size_t community(NodeId v) const { return labels_[v]; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

    std::vector<std::size_t> sizes() const;
    std::vector<std::vector<NodeId>> members() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::size_t> labels_;
    std::size_t count_ = 0;
};

/// Two-level map equation value in bits.
struct Codelength {
    double total = 0.0;
    double index = 0.0;                ///< q H(Q)
    std::vector<double> module_terms;  ///< p_i H(P_i), per canonical community
};

/// Exit flow of a module counts teleportation out of it (recorded on every
/// step) plus link flow leaving it. Throws InvalidArgument on size mismatch.
Codelength codelength(const CitationGraph& g, const Partition& p, const FlowDistribution& flow);

struct DetectOptions {
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    double teleport = 0.15;
    double min_improvement = 1e-10;  ///< bits
    std::size_t threads = 1;
    bool record_history = false;     ///< keep the codelength after every accepted move
};

struct TrialRecord {
    std::size_t trial = 0;
    double codelength = 0.0;
    std::size_t communities = 0;
    std::vector<double> history;
};

struct Detection {
    Partition partition;
    Codelength codelength;
    FlowDistribution flow;
    std::vector<TrialRecord> trials;
    std::size_t best_trial = 0;

    std::string trial_log() const;
};

/// Repeated greedy map-equation minimisation with module aggregation and
/// node-level fine-tuning. Trial t uses the RNG stream derive_seed(seed, t);
/// the lowest codelength wins, earliest trial on ties.
Detection detect_communities(const CitationGraph& g, const DetectOptions& options = {});

/// Normalized mutual information, arithmetic-mean normalization. Two
/// partitions with zero entropy each score 1. Throws InvalidArgument if the
/// node counts differ.
double nmi(const Partition& a, const Partition& b);

}  // namespace citenet
