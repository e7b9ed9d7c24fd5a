#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "glad/cost.hpp"
#include "glad/mincut.hpp"
#include "glad/model.hpp"

namespace glad {

enum class InitKind { Random, UploadFirst, WarmStart };
enum class PairTieBreak { LowestIndex, SeededRandom };

struct GladConfig {
    // Consecutive non-improving iterations tolerated before stopping.
    int r_max = 3;
    InitKind init = InitKind::Random;
    PairTieBreak tie_break = PairTieBreak::LowestIndex;
    uint64_t seed = 1;
    std::optional<GraphLayout> warm_start;
    // Optional hard cap on iterations; 0 means uncapped.
    long max_iterations = 0;

    void validate() const;
};

// r_max large enough that every connected pair can be rejected once in a row.
int exhaustive_r(const EdgeNetwork& network);

// Visit counts over the connected server pairs, lexicographic order.
class VisitCounter {
public:
    explicit VisitCounter(const EdgeNetwork& network);

    const std::vector<std::pair<ServerId, ServerId>>& pairs() const { return pairs_; }
    long count(ServerId i, ServerId j) const;
    long count_at(size_t idx) const { return counts_[idx]; }
    void increment(size_t idx) { ++counts_[idx]; }

private:
    std::vector<std::pair<ServerId, ServerId>> pairs_;
    std::vector<long> counts_;
};

class Rng;

// Least-visited pair; ties by lexicographic order or a seeded uniform pick.
// The winner's count is incremented. Throws NoConnectedPairsError when there
// is nothing to select from.
std::pair<ServerId, ServerId> select_pair(VisitCounter& visits, PairTieBreak tie_break,
                                          Rng* rng);

struct IterationRecord {
    long iteration = 0;  // 1-based
    ServerId pair_i = 0;
    ServerId pair_j = 0;
    double candidate_cost = 0.0;
    bool accepted = false;
    double best_cost = 0.0;  // running best after this iteration
    int r = 0;               // consecutive rejections after this iteration
};

struct IterationLog {
    double initial_cost = 0.0;
    std::vector<IterationRecord> records;
};

// Starting layout per config. Random assigns uniformly per vertex;
// UploadFirst takes each vertex's cheapest upload server (ties to the lowest
// id); WarmStart validates and adopts config.warm_start.
GraphLayout init_layout(const Instance& inst, const GladConfig& cfg);

// Two-terminal auxiliary network for the server pair (i, j) over the
// vertices currently placed on i or j. Node 0 is the source (server i),
// node 1 the sink (server j); the k-th member vertex in ascending id order
// is node 2+k. The source->v arc carries the cost of placing v at i (unary
// plus side effects from neighbors resident elsewhere), v->sink the cost of
// placing v at j, and each data link inside the member set becomes a pair of
// opposite arcs weighted by the split cost across (i, j).
FlowNetwork build_auxiliary_graph(ServerId i, ServerId j, const GraphLayout& layout,
                                  const Instance& inst);

// Map a cut on build_auxiliary_graph(i, j, prev, ...) back to a layout:
// members on the sink side of the cut go to i (their source arc was cut),
// members on the source side go to j; everything else keeps prev.
GraphLayout cut_to_layout(const CutResult& cut, ServerId i, ServerId j,
                          const GraphLayout& prev);

struct GladResult {
    GraphLayout layout;
    IterationLog log;
};

// Iterative pairwise-cut optimization over `movable` vertices (indexed by
// vertex id); fixed vertices contribute side-effect weights but never move.
// Candidate relabelings are accepted only on strict cost improvement; the
// loop stops after cfg.r_max consecutive rejections.
GladResult optimize_layout(const Instance& inst, GraphLayout start,
                           const std::vector<uint8_t>& movable, const GladConfig& cfg);

// Full static optimization: init per config, all vertices movable.
GladResult glad_s(const Instance& inst, const GladConfig& cfg);

}  // namespace glad
