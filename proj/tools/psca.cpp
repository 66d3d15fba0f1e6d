// Command-line driver: verify, search, search-cosets, subgroups,
// expand-cosets, transform. Reports go to stderr; data goes to --out or
// stdout. Exit codes: 0 success/found, 1 invalid/no solutions, 2 usage or
// parse error, 3 memory-budget refusal.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "psca/groups.hpp"
#include "psca/incidence.hpp"
#include "psca/io.hpp"
#include "psca/psca_ops.hpp"
#include "psca/search.hpp"

namespace {

constexpr const char* kEngineVersion = "psca-tools 0.1.0";

using namespace psca;

struct CommonOpts {
    double timeLimit = 0;
    int64_t maxSolutions = 0;
    int threads = 1;
    int64_t memoryBudget = IncidenceMatrix::kDefaultBudget;
    std::string out;
};

void addCommonFlags(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--time-limit", c.timeLimit, "wall-clock limit in seconds");
    cmd->add_option("--max-solutions", c.maxSolutions,
                    "stop after this many distinct solutions");
    cmd->add_option("--threads", c.threads, "worker threads (default 1)");
    cmd->add_option("--memory-budget", c.memoryBudget,
                    "matrix memory budget in bytes");
    cmd->add_option("--out", c.out, "output file (default: stdout)");
}

// Data sink: --out path or stdout.
struct Sink {
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file ? *file : std::cout; }
    std::unique_ptr<std::ofstream> file;
};

std::string joinArgs(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string gensText(const Subgroup& g) {
    std::string s;
    const auto& gens = g.generators();
    if (gens.empty()) return "1";
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ',';
        s += g.n() <= 9 ? gens[i].toCompact() : gens[i].toText();
    }
    return s;
}

SequenceFile readSequencesArg(const std::string& path) {
    if (path == "-") return readSequenceStream(std::cin, "<stdin>");
    return readSequenceFile(path);
}

// Resolve n/k/lambda from flags and the file manifest; flags win, mismatches
// are usage errors.
void resolveParams(const SequenceFile& f, int& n, int& k,
                   std::optional<int64_t>& lambda) {
    if (n == 0) {
        if (!f.n) throw std::invalid_argument("--n required (no manifest in file)");
        n = *f.n;
    }
    if (k == 0) {
        if (!f.k) throw std::invalid_argument("--k required (no manifest in file)");
        k = *f.k;
    }
    if (!lambda && f.lambda) lambda = *f.lambda;
}

void writeSolutionHeader(std::ostream& os, int n, int k, int64_t lambda,
                         const std::string& commandLine, size_t solutions,
                         Termination term) {
    os << "# psca n=" << n << " k=" << k << " lambda=" << lambda << "\n";
    os << "# command: " << commandLine << "\n";
    os << "# engine: " << kEngineVersion << "\n";
    os << "# solutions: " << solutions << " termination: " << terminationName(term)
       << "\n";
}

void writeBlock(std::ostream& os, const std::vector<Perm>& seqs) {
    os << "\n";
    for (const Perm& p : seqs) os << p.toText() << "\n";
}

int cmdVerify(const std::string& file, int n, int k,
              std::optional<int64_t> expectedLambda) {
    SequenceFile f = readSequencesArg(file);
    resolveParams(f, n, k, expectedLambda);
    if (f.blocks.empty()) {
        std::cout << "invalid: empty file\n";
        return 1;
    }
    bool allValid = true;
    for (size_t b = 0; b < f.blocks.size(); ++b) {
        VerifyResult r = verify(n, k, f.blocks[b], expectedLambda);
        if (f.blocks.size() > 1) std::cout << "block " << (b + 1) << ": ";
        std::cout << r.message() << "\n";
        allValid = allValid && r.valid;
    }
    return allValid ? 0 : 1;
}

int cmdSearch(int n, int k, int64_t lambda, const CommonOpts& c,
              const std::string& commandLine) {
    IncidenceMatrix m = IncidenceMatrix::plain(n, k, c.memoryBudget);
    SearchProblem pb = plainProblem(m, lambda);
    SearchLimits lim{c.maxSolutions, c.timeLimit, c.threads};
    SearchReport rep = search(pb, lim);

    Sink sink(c.out);
    writeSolutionHeader(sink.stream(), n, k, lambda, commandLine,
                        rep.solutions.size(), rep.termination);
    for (const auto& rows : rep.solutions) {
        std::vector<Perm> seqs;
        for (uint32_t r : rows) seqs.push_back(m.rowLabels()[r]);
        std::sort(seqs.begin(), seqs.end());
        writeBlock(sink.stream(), seqs);
    }
    std::cerr << "report: solutions=" << rep.solutions.size()
              << " nodes=" << rep.nodesVisited << " pruned=" << rep.branchesPruned
              << " time=" << rep.wallTimeSec
              << "s termination=" << terminationName(rep.termination) << "\n";
    return rep.solutions.empty() ? 1 : 0;
}

struct GroupSourceOpts {
    std::vector<std::string> groupFiles;
    int64_t minOrder = 2;
    int64_t maxOrder = 0;  // 0 = unbounded
    bool cyclicOnly = false;
};

std::vector<Subgroup> loadGroupSource(int n, int64_t kFactLambda, CosetSide side,
                                      const GroupSourceOpts& g) {
    std::vector<Subgroup> groups;
    if (!g.groupFiles.empty()) {
        for (const std::string& path : g.groupFiles)
            groups.push_back(Subgroup::closure(n, readPermsFlat(path)));
        return groups;
    }
    std::optional<int64_t> maxOrder;
    if (g.maxOrder > 0) maxOrder = g.maxOrder;
    return enumeratedCosetGroups(n, kFactLambda, side, g.minOrder, maxOrder,
                                 g.cyclicOnly);
}

int cmdSearchCosets(int n, int k, int64_t lambda, CosetSide side,
                    const GroupSourceOpts& gopts, bool stopOnHit,
                    const CommonOpts& c, const std::string& commandLine) {
    CosetSearchRequest req;
    req.n = n;
    req.k = k;
    req.lambda = lambda;
    req.side = side;
    req.groups = loadGroupSource(n, factorial(k) * lambda, side, gopts);
    req.limits = SearchLimits{c.maxSolutions, c.timeLimit, c.threads};
    req.stopOnHit = stopOnHit;
    req.memoryBudget = c.memoryBudget;
    auto outcomes = searchCosets(req);

    size_t totalSolutions = 0;
    for (const auto& oc : outcomes) totalSolutions += oc.solutionSequences.size();

    Sink sink(c.out);
    writeSolutionHeader(sink.stream(), n, k, lambda, commandLine, totalSolutions,
                        Termination::exhausted);
    for (const auto& oc : outcomes) {
        if (oc.solutionSequences.empty()) continue;
        for (size_t s = 0; s < oc.solutionSequences.size(); ++s) {
            sink.stream() << "\n# group order=" << oc.group.order()
                          << " side=" << sideName(side)
                          << " gens=" << gensText(oc.group) << "\n";
            sink.stream() << "# cosets:";
            for (const Perm& rep : oc.solutionReps[s])
                sink.stream() << " "
                              << (n <= 9 ? rep.toCompact() : rep.toText());
            sink.stream() << "\n";
            for (const Perm& p : oc.solutionSequences[s])
                sink.stream() << p.toText() << "\n";
        }
    }

    for (const auto& oc : outcomes) {
        std::cerr << "group order=" << oc.group.order();
        if (!oc.name.empty()) std::cerr << " name=" << oc.name;
        std::cerr << " gens=" << gensText(oc.group);
        if (!oc.skipReason.empty()) {
            std::cerr << " result=skipped reason=\"" << oc.skipReason << "\"\n";
            continue;
        }
        std::cerr << " result=" << (oc.solutionSequences.empty() ? "no" : "yes")
                  << " solutions=" << oc.solutionSequences.size()
                  << " nodes=" << oc.report.nodesVisited
                  << " pruned=" << oc.report.branchesPruned
                  << " time=" << oc.report.wallTimeSec << "s termination="
                  << terminationName(oc.report.termination) << "\n";
    }
    return totalSolutions > 0 ? 0 : 1;
}

int cmdSubgroups(int n, const GroupSourceOpts& gopts, const std::string& out) {
    ClassEnumOptions opts;
    if (gopts.maxOrder > 0) opts.maxOrder = gopts.maxOrder;
    opts.cyclicOnly = gopts.cyclicOnly;
    auto classes = enumerateSubgroupClasses(n, opts);
    Sink sink(out);
    size_t count = 0;
    for (const auto& g : classes) {
        if (g.order() < gopts.minOrder) continue;
        ++count;
        sink.stream() << "order=" << g.order();
        std::string name = advisoryGroupName(g);
        if (!name.empty()) sink.stream() << " name=" << name;
        sink.stream() << " gens=" << gensText(g) << "\n";
    }
    std::cerr << "classes: " << count << "\n";
    return 0;
}

int cmdExpandCosets(int n, const std::string& groupFile,
                    const std::string& repsFile, CosetSide side,
                    const std::string& out) {
    Subgroup g = Subgroup::closure(n, readPermsFlat(groupFile));
    std::vector<Perm> reps = readPermsFlat(repsFile);
    std::vector<Perm> seqs;
    std::set<Perm> seen;
    std::set<Perm> cosetKeys;  // least member per emitted coset
    for (const Perm& rep : reps) {
        auto coset = expandCoset(g, rep, side);
        if (cosetKeys.count(coset.front())) {
            std::cerr << "warning: representative "
                      << (n <= 9 ? rep.toCompact() : rep.toText())
                      << " repeats an already-expanded coset\n";
            continue;
        }
        for (const Perm& x : coset) {
            if (seen.count(x)) {
                std::cerr << "error: cosets overlap at " << x.toText() << "\n";
                return 1;
            }
        }
        cosetKeys.insert(coset.front());
        for (const Perm& x : coset) {
            seen.insert(x);
            seqs.push_back(x);
        }
    }
    std::sort(seqs.begin(), seqs.end());
    Sink sink(out);
    sink.stream() << "# psca n=" << n << " sequences=" << seqs.size()
                  << " group-order=" << g.order() << " side=" << sideName(side)
                  << "\n";
    for (const Perm& p : seqs) sink.stream() << p.toText() << "\n";
    std::cerr << "expanded " << cosetKeys.size() << " coset(s), " << seqs.size()
              << " sequence(s), |G|=" << g.order() << "\n";
    return 0;
}

int cmdTransform(const std::string& kind, const std::string& in,
                 const std::string& in2, int n, int k, int symbol,
                 const std::string& sigmaText, const std::string& out) {
    SequenceFile f = readSequencesArg(in);
    std::optional<int64_t> lambda;
    resolveParams(f, n, k, lambda);
    VerifyResult vr = verify(n, k, f.flat());
    if (!vr.valid) {
        std::cerr << "input does not verify: " << vr.message() << "\n";
        return 1;
    }
    PscaInstance p{n, k, vr.lambda, f.flat()};

    PscaInstance result;
    if (kind == "delete-symbol") {
        if (symbol == 0) throw std::invalid_argument("--symbol required");
        result = deleteSymbol(p, symbol);
    } else if (kind == "relabel") {
        if (sigmaText.empty()) throw std::invalid_argument("--sigma required");
        result = relabel(p, parsePermText(sigmaText));
    } else if (kind == "reinterpret") {
        result = reinterpret(p);
    } else if (kind == "union") {
        if (in2.empty()) throw std::invalid_argument("--in2 required for union");
        SequenceFile f2 = readSequencesArg(in2);
        int n2 = 0, k2 = 0;
        std::optional<int64_t> lambda2;
        resolveParams(f2, n2, k2, lambda2);
        VerifyResult vr2 = verify(n2, k2, f2.flat());
        if (!vr2.valid) {
            std::cerr << "second input does not verify: " << vr2.message() << "\n";
            return 1;
        }
        result = unionInstances(p, PscaInstance{n2, k2, vr2.lambda, f2.flat()});
    } else {
        throw std::invalid_argument("unknown transform kind: " + kind);
    }

    VerifyResult check = verify(result.n, result.k, result.sequences);
    Sink sink(out);
    sink.stream() << "# psca n=" << result.n << " k=" << result.k
                  << " lambda=" << result.lambda << "\n";
    std::vector<Perm> seqs = result.sequences;
    std::sort(seqs.begin(), seqs.end());
    for (const Perm& x : seqs) sink.stream() << x.toText() << "\n";
    std::cerr << "result: " << check.message() << "\n";
    return check.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect sequence covering arrays: search, verify, transform"};
    app.require_subcommand(1);
    std::string commandLine = joinArgs(argc, argv);

    // verify
    auto* verifyCmd = app.add_subcommand("verify", "verify a sequence file");
    std::string vFile;
    int vN = 0, vK = 0;
    int64_t vLambda = -1;
    verifyCmd->add_option("file", vFile, "sequence file, or - for stdin")->required();
    verifyCmd->add_option("--n", vN, "number of symbols");
    verifyCmd->add_option("--k", vK, "subsequence length");
    verifyCmd->add_option("--lambda", vLambda, "expected multiplicity");

    // search
    auto* searchCmd = app.add_subcommand("search", "plain backtracking search");
    int sN = 0, sK = 0;
    int64_t sLambda = 1;
    CommonOpts sCommon;
    searchCmd->add_option("--n", sN)->required();
    searchCmd->add_option("--k", sK)->required();
    searchCmd->add_option("--lambda", sLambda)->required();
    addCommonFlags(searchCmd, sCommon);

    // search-cosets
    auto* cosetCmd =
        app.add_subcommand("search-cosets", "union-of-cosets search");
    int cN = 0, cK = 0;
    int64_t cLambda = 1;
    std::string cSide;
    GroupSourceOpts cGroups;
    bool cStop = false;
    CommonOpts cCommon;
    cosetCmd->add_option("--n", cN)->required();
    cosetCmd->add_option("--k", cK)->required();
    cosetCmd->add_option("--lambda", cLambda)->required();
    cosetCmd->add_option("--side", cSide, "left or right")
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    cosetCmd->add_option("--group-file", cGroups.groupFiles,
                         "explicit subgroup generator file (repeatable)");
    cosetCmd->add_option("--min-order", cGroups.minOrder);
    cosetCmd->add_option("--max-order", cGroups.maxOrder);
    cosetCmd->add_flag("--cyclic-only", cGroups.cyclicOnly);
    cosetCmd->add_flag("--stop-on-hit", cStop,
                       "stop after the first subgroup with solutions");
    addCommonFlags(cosetCmd, cCommon);

    // subgroups
    auto* subCmd =
        app.add_subcommand("subgroups", "conjugacy classes of subgroups");
    int gN = 0;
    GroupSourceOpts gOpts;
    std::string gOut;
    subCmd->add_option("--n", gN)->required();
    subCmd->add_option("--min-order", gOpts.minOrder);
    subCmd->add_option("--max-order", gOpts.maxOrder);
    subCmd->add_flag("--cyclic-only", gOpts.cyclicOnly);
    subCmd->add_option("--out", gOut);

    // expand-cosets
    auto* expandCmd = app.add_subcommand("expand-cosets",
                                         "materialize a union of cosets");
    int eN = 0;
    std::string eGroupFile, eRepsFile, eSide, eOut;
    expandCmd->add_option("--n", eN)->required();
    expandCmd->add_option("--group-file", eGroupFile)->required();
    expandCmd->add_option("--reps-file", eRepsFile)->required();
    expandCmd->add_option("--side", eSide)
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    expandCmd->add_option("--out", eOut);

    // transform
    auto* transCmd = app.add_subcommand("transform", "apply a closure transform");
    std::string tKind, tIn, tIn2, tSigma, tOut;
    int tN = 0, tK = 0, tSymbol = 0;
    transCmd
        ->add_option("kind", tKind,
                     "delete-symbol | relabel | reinterpret | union")
        ->required()
        ->check(CLI::IsMember({"delete-symbol", "relabel", "reinterpret", "union"}));
    transCmd->add_option("--in", tIn, "input sequence file")->required();
    transCmd->add_option("--in2", tIn2, "second input (union)");
    transCmd->add_option("--n", tN);
    transCmd->add_option("--k", tK);
    transCmd->add_option("--symbol", tSymbol, "symbol to delete");
    transCmd->add_option("--sigma", tSigma, "relabeling permutation");
    transCmd->add_option("--out", tOut);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verifyCmd)
            return cmdVerify(vFile, vN, vK,
                             vLambda >= 0 ? std::optional<int64_t>(vLambda)
                                          : std::nullopt);
        if (*searchCmd) return cmdSearch(sN, sK, sLambda, sCommon, commandLine);
        if (*cosetCmd)
            return cmdSearchCosets(cN, cK, cLambda,
                                   cSide == "left" ? CosetSide::left
                                                   : CosetSide::right,
                                   cGroups, cStop, cCommon, commandLine);
        if (*subCmd) return cmdSubgroups(gN, gOpts, gOut);
        if (*expandCmd)
            return cmdExpandCosets(eN, eGroupFile, eRepsFile,
                                   eSide == "left" ? CosetSide::left
                                                   : CosetSide::right,
                                   eOut);
        if (*transCmd)
            return cmdTransform(tKind, tIn, tIn2, tN, tK, tSymbol, tSigma, tOut);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
