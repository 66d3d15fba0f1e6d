#include "psca/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace psca {

const char* terminationName(Termination t) {
    switch (t) {
        case Termination::exhausted: return "exhausted";
        case Termination::solutionLimit: return "solution-limit";
        case Termination::timeLimit: return "time-limit";
    }
    return "?";
}

SearchProblem plainProblem(const IncidenceMatrix& m, int64_t lambda) {
    if (m.maxEntry() != 1)
        throw std::invalid_argument("plainProblem requires a plain incidence matrix");
    if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
    SearchProblem p;
    p.matrix = &m;
    p.lambda = lambda;
    p.targetRows = factorial(m.k()) * lambda;
    int64_t idRow = m.findRow(Perm::identity(m.n()));
    p.rootRows = {static_cast<uint32_t>(idRow)};
    return p;
}

std::optional<SearchProblem> groupProblem(const IncidenceMatrix& m,
                                          const Subgroup& G, int64_t lambda) {
    if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
    const int64_t order = m.maxEntry();
    if (order != G.order())
        throw std::invalid_argument("matrix was not built for this subgroup");
    const int64_t kFactLambda = factorial(m.k()) * lambda;
    if (kFactLambda % order != 0)
        throw std::invalid_argument("|G| must divide k! * lambda");
    SearchProblem p;
    p.matrix = &m;
    p.lambda = lambda;
    p.targetRows = kFactLambda / order;

    if (m.side() == CosetSide::left) {
        for (int64_t r = 0; r < m.rowCount(); ++r)
            for (const auto& e : m.row(r))
                if (e.count > lambda) {
                    p.excludedRows.push_back(static_cast<uint32_t>(r));
                    break;
                }
    } else {
        // The coset of G itself is labeled by the identity. If its row has
        // an entry above lambda, every row does, and no union of right
        // cosets of G can work.
        int64_t gRow = m.findRow(Perm::identity(m.n()));
        for (const auto& e : m.row(gRow))
            if (e.count > lambda) return std::nullopt;
        p.rootRows = {static_cast<uint32_t>(gRow)};
    }
    return p;
}

namespace {

using Clock = std::chrono::steady_clock;

struct State {
    std::vector<uint32_t> chosen;   // X
    std::vector<uint32_t> liveY;    // ascending
    std::vector<uint32_t> cand;     // L, ascending
    std::vector<int32_t> cover;     // r, by column
    std::vector<int32_t> pot;       // m, by column
    std::vector<uint8_t> inY;       // by column
    std::vector<uint8_t> inL;       // by row
};

struct Collector {
    std::vector<std::vector<uint32_t>> found;
    int64_t nodes = 0;
    int64_t pruned = 0;
};

class Engine {
public:
    Engine(const SearchProblem& pb, const SearchLimits& limits,
           const NodeHook& hook)
        : pb_(pb),
          A_(*pb.matrix),
          lambda_(static_cast<int32_t>(pb.lambda)),
          target_(pb.targetRows),
          maxSol_(limits.maxSolutions),
          hook_(hook) {
        if (limits.timeLimitSec > 0) {
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(limits.timeLimitSec));
            hasDeadline_ = true;
        }
    }

    SearchReport run(int threads) {
        auto t0 = Clock::now();
        Collector main;
        if (threads <= 1) {
            State root = makeRoot();
            dfs(root, main);
        } else {
            runThreaded(threads, main);
        }

        SearchReport rep;
        rep.nodesVisited = main.nodes;
        rep.branchesPruned = main.pruned;
        if (maxSol_ > 0) {
            std::lock_guard<std::mutex> lk(mu_);
            rep.solutions.assign(sols_.begin(), sols_.end());
        } else {
            std::sort(main.found.begin(), main.found.end());
            main.found.erase(std::unique(main.found.begin(), main.found.end()),
                             main.found.end());
            rep.solutions = std::move(main.found);
        }
        int cause = termCause_.load();
        rep.termination = cause == 1   ? Termination::solutionLimit
                          : cause == 2 ? Termination::timeLimit
                                       : Termination::exhausted;
        rep.wallTimeSec =
            std::chrono::duration<double>(Clock::now() - t0).count();
        return rep;
    }

private:
    // Deferred child: materialized from the shared parent state only when
    // the task is picked up.
    struct Task {
        std::shared_ptr<const State> parent;
        uint32_t branchRow;
    };

    void runThreaded(int threads, Collector& main) {
        std::deque<Task> queue;
        auto pushChildren = [&](const std::shared_ptr<const State>& parent,
                                const std::vector<uint32_t>& branches) {
            for (uint32_t x : branches) queue.push_back({parent, x});
        };

        {
            auto root = std::make_shared<State>(makeRoot());
            std::vector<uint32_t> branches;
            if (expandNode(*root, main, branches)) pushChildren(root, branches);
        }
        const size_t fill = static_cast<size_t>(threads) * 8;
        while (!queue.empty() && queue.size() < fill && !stop_) {
            Task t = std::move(queue.front());
            queue.pop_front();
            auto child = std::make_shared<State>();
            makeChild(*t.parent, t.branchRow, *child);
            std::vector<uint32_t> branches;
            if (expandNode(*child, main, branches)) pushChildren(child, branches);
        }

        std::vector<Task> tasks(std::make_move_iterator(queue.begin()),
                                std::make_move_iterator(queue.end()));
        queue.clear();
        std::atomic<size_t> next{0};
        std::vector<Collector> parts(static_cast<size_t>(threads));
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                Collector& c = parts[static_cast<size_t>(t)];
                while (!stop_) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) break;
                    State s;
                    makeChild(*tasks[i].parent, tasks[i].branchRow, s);
                    dfs(s, c);
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& c : parts) {
            main.nodes += c.nodes;
            main.pruned += c.pruned;
            for (auto& s : c.found) main.found.push_back(std::move(s));
        }
    }

    State makeRoot() const {
        const int64_t rows = A_.rowCount();
        const int64_t cols = A_.colCount();
        State s;
        s.cover.assign(static_cast<size_t>(cols), 0);
        s.pot.assign(static_cast<size_t>(cols), 0);
        s.inY.assign(static_cast<size_t>(cols), 1);
        s.liveY.resize(static_cast<size_t>(cols));
        for (int64_t c = 0; c < cols; ++c)
            s.liveY[static_cast<size_t>(c)] = static_cast<uint32_t>(c);
        s.inL.assign(static_cast<size_t>(rows), 1);
        for (uint32_t r : pb_.excludedRows) s.inL[r] = 0;
        s.cand.reserve(static_cast<size_t>(rows));
        for (int64_t r = 0; r < rows; ++r) {
            if (!s.inL[static_cast<size_t>(r)]) continue;
            s.cand.push_back(static_cast<uint32_t>(r));
            for (const auto& e : A_.row(r))
                s.pot[e.index] += static_cast<int32_t>(e.count);
        }
        return s;
    }

    void recordSolution(const std::vector<uint32_t>& chosen, Collector& c) {
        std::vector<uint32_t> sol = chosen;
        std::sort(sol.begin(), sol.end());
        if (maxSol_ > 0) {
            std::lock_guard<std::mutex> lk(mu_);
            sols_.insert(std::move(sol));
            if (static_cast<int64_t>(sols_.size()) >= maxSol_) {
                int expected = 0;
                termCause_.compare_exchange_strong(expected, 1);
                stop_ = true;
            }
        } else {
            c.found.push_back(std::move(sol));
        }
    }

    // Entry bookkeeping of one SEARCH node: success/prune tests and branch
    // selection. Returns true iff the node branches; branch rows arrive in
    // ascending index order.
    bool expandNode(State& s, Collector& c, std::vector<uint32_t>& branches) {
        if (stop_) return false;
        ++c.nodes;
        if (hasDeadline_ && Clock::now() >= deadline_) {
            int expected = 0;
            termCause_.compare_exchange_strong(expected, 2);
            stop_ = true;
            return false;
        }
        if (hook_) hook_(SearchStateView{s.chosen, s.liveY, s.cover, s.pot, s.cand});
        if (static_cast<int64_t>(s.chosen.size()) == target_) {
            recordSolution(s.chosen, c);
            return false;
        }
        for (uint32_t y : s.liveY) {
            if (s.cover[y] + s.pot[y] < lambda_) {
                ++c.pruned;
                return false;
            }
        }

        branches.clear();
        if (s.chosen.empty() && !pb_.rootRows.empty()) {
            for (uint32_t x : pb_.rootRows)
                if (s.inL[x]) branches.push_back(x);
            return !branches.empty();
        }

        int32_t bestR = -1;
        for (uint32_t y : s.liveY) bestR = std::max(bestR, s.cover[y]);
        uint32_t ystar = 0;
        int32_t bestM = INT32_MAX;
        for (uint32_t y : s.liveY) {
            if (s.cover[y] == bestR && s.pot[y] < bestM) {
                bestM = s.pot[y];
                ystar = y;
            }
        }
        for (const auto& e : A_.col(ystar))
            if (s.inL[e.index]) branches.push_back(e.index);
        return !branches.empty();
    }

    void dfs(State& s, Collector& c) {
        std::vector<uint32_t> branches;
        if (!expandNode(s, c, branches)) return;
        for (uint32_t x : branches) {
            if (stop_) return;
            State child;
            makeChild(s, x, child);
            dfs(child, c);
        }
    }

    void makeChild(const State& parent, uint32_t x, State& child) const {
        child = parent;
        child.chosen.push_back(x);
        child.inL[x] = 0;

        // Coverage update, then candidate removal against the new headroom.
        for (const auto& e : A_.row(x))
            if (child.inY[e.index]) child.cover[e.index] += static_cast<int32_t>(e.count);

        std::vector<uint32_t> removed;
        removed.push_back(x);
        for (const auto& e : A_.row(x)) {
            if (!child.inY[e.index]) continue;
            const int32_t headroom = lambda_ - child.cover[e.index];
            for (const auto& ce : A_.col(e.index)) {
                if (child.inL[ce.index] && static_cast<int32_t>(ce.count) > headroom) {
                    child.inL[ce.index] = 0;
                    removed.push_back(ce.index);
                }
            }
        }

        // Y shrink, then potential update over the surviving columns.
        size_t w = 0;
        for (uint32_t y : child.liveY) {
            if (child.cover[y] >= lambda_) {
                child.inY[y] = 0;
            } else {
                child.liveY[w++] = y;
            }
        }
        child.liveY.resize(w);

        for (uint32_t rrow : removed)
            for (const auto& e : A_.row(rrow))
                if (child.inY[e.index]) child.pot[e.index] -= static_cast<int32_t>(e.count);

        w = 0;
        for (uint32_t row : child.cand)
            if (child.inL[row]) child.cand[w++] = row;
        child.cand.resize(w);
    }

    const SearchProblem& pb_;
    const IncidenceMatrix& A_;
    const int32_t lambda_;
    const int64_t target_;
    const int64_t maxSol_;
    const NodeHook& hook_;
    Clock::time_point deadline_{};
    bool hasDeadline_ = false;

    std::atomic<bool> stop_{false};
    std::atomic<int> termCause_{0};
    std::mutex mu_;
    std::set<std::vector<uint32_t>> sols_;
};

}  // namespace

SearchReport search(const SearchProblem& problem, const SearchLimits& limits,
                    const NodeHook& hook) {
    if (!problem.matrix) throw std::invalid_argument("search: missing matrix");
    if (problem.targetRows < 1)
        throw std::invalid_argument("search: target size must be >= 1");
    Engine engine(problem, limits, hook);
    return engine.run(std::max(1, limits.threads));
}

std::vector<GroupSearchOutcome> searchCosets(const CosetSearchRequest& req) {
    std::vector<Subgroup> groups = req.groups;
    std::sort(groups.begin(), groups.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.elements() < b.elements();
    });

    const int64_t kFactLambda = factorial(req.k) * req.lambda;
    auto t0 = Clock::now();
    std::vector<GroupSearchOutcome> out;
    for (Subgroup& g : groups) {
        GroupSearchOutcome oc;
        oc.name = advisoryGroupName(g);
        if (g.isTrivial()) {
            oc.group = std::move(g);
            oc.skipReason = "trivial subgroup";
            out.push_back(std::move(oc));
            continue;
        }
        if (kFactLambda % g.order() != 0) {
            oc.group = std::move(g);
            oc.skipReason = "order does not divide k!*lambda = " +
                            std::to_string(kFactLambda);
            out.push_back(std::move(oc));
            continue;
        }

        IncidenceMatrix m =
            IncidenceMatrix::forGroup(req.n, req.k, g, req.side, req.memoryBudget);
        auto problem = groupProblem(m, g, req.lambda);
        if (!problem) {
            oc.group = std::move(g);
            oc.skipReason = "row of the subgroup coset has an entry above lambda";
            out.push_back(std::move(oc));
            continue;
        }

        SearchLimits limits = req.limits;
        if (req.limits.timeLimitSec > 0) {
            double used = std::chrono::duration<double>(Clock::now() - t0).count();
            double remaining = req.limits.timeLimitSec - used;
            if (remaining <= 0) {
                oc.group = std::move(g);
                oc.skipReason = "global time limit reached";
                out.push_back(std::move(oc));
                continue;
            }
            limits.timeLimitSec = remaining;
        }

        oc.report = search(*problem, limits);
        for (const auto& rows : oc.report.solutions) {
            std::vector<Perm> reps;
            std::vector<Perm> seqs;
            for (uint32_t r : rows) {
                const Perm& rep = m.rowLabels()[r];
                reps.push_back(rep);
                for (const Perm& x : expandCoset(g, rep, req.side))
                    seqs.push_back(x);
            }
            std::sort(seqs.begin(), seqs.end());
            oc.solutionReps.push_back(std::move(reps));
            oc.solutionSequences.push_back(std::move(seqs));
        }
        bool hit = !oc.report.solutions.empty();
        oc.group = std::move(g);
        out.push_back(std::move(oc));
        if (hit && req.stopOnHit) break;
    }
    return out;
}

std::vector<Subgroup> enumeratedCosetGroups(int n, int64_t kFactLambda,
                                            CosetSide side, int64_t minOrder,
                                            std::optional<int64_t> maxOrder,
                                            bool cyclicOnly) {
    ClassEnumOptions opts;
    opts.cyclicOnly = cyclicOnly;
    int64_t bound = kFactLambda;
    if (maxOrder) bound = std::min(bound, *maxOrder);
    opts.maxOrder = bound;
    std::vector<Subgroup> classes = enumerateSubgroupClasses(n, opts);

    std::vector<Subgroup> out;
    for (Subgroup& g : classes) {
        if (g.order() < std::max<int64_t>(minOrder, 2)) continue;
        if (maxOrder && g.order() > *maxOrder) continue;
        if (side == CosetSide::left) {
            out.push_back(std::move(g));
        } else {
            for (Subgroup& member : conjugacyClassMembers(g))
                out.push_back(std::move(member));
        }
    }
    return out;
}

}  // namespace psca
