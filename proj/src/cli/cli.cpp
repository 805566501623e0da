#include "deephole/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deephole/acceptance.hpp"
#include "deephole/classify.hpp"
#include "deephole/consab.hpp"
#include "deephole/errors.hpp"
#include "deephole/niemeier.hpp"

namespace dh {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag combinations found after parsing.
struct UsageError : Error {
    using Error::Error;
};

// A computation disagreed with its own check; the report has already been printed.
struct Mismatch : Error {
    using Error::Error;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

// ---- output helpers ----

std::size_t displayWidth(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string scalarText(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_null()) return "-";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : " ") + scalarText(e);
        return s;
    }
    return v.dump();
}

void flatten(const Json& obj, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [k, v] : obj.items()) {
        if (v.is_object())
            flatten(v, prefix + k + ".", rows);
        else
            rows.emplace_back(prefix + k, scalarText(v));
    }
}

// Aligned "key  value" lines.
void printFields(std::ostream& out, const Json& obj) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(obj, "", rows);
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, displayWidth(r.first));
    for (const auto& [k, v] : rows) out << k << std::string(w + 2 - displayWidth(k), ' ') << v << '\n';
}

void printTable(std::ostream& out, const std::vector<std::string>& head,
                const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(head.size());
    for (std::size_t j = 0; j < head.size(); ++j) w[j] = displayWidth(head[j]);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < r.size(); ++j) w[j] = std::max(w[j], displayWidth(r[j]));
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            out << r[j];
            if (j + 1 < r.size()) out << std::string(w[j] + 2 - displayWidth(r[j]), ' ');
        }
        out << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
}

std::string csvField(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

void csvLine(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csvField(fields[i]);
    out << "\r\n";
}

Json matrixJson(const QMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        a.push_back(row);
    }
    return a;
}

Json matrixJson(const ZMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        a.push_back(row);
    }
    return a;
}

Json latticeJson(const RationalLattice& l) {
    Json j;
    j["rank"] = l.rank();
    j["gram"] = matrixJson(l.gram());
    if (l.hasAmbient()) {
        j["ambientBasis"] = matrixJson(l.ambientBasis());
        j["ambientGram"] = matrixJson(l.ambientGram());
    }
    return j;
}

// Lattice-valued commands print the lattice file, or its JSON form.
void emitLattice(const Io& io, bool json, const RationalLattice& l) {
    if (json)
        io.out << latticeJson(l).dump(2) << '\n';
    else
        writeLattice(io.out, l);
}

void emitFields(const Io& io, bool json, const Json& obj) {
    if (json)
        io.out << obj.dump(2) << '\n';
    else
        printFields(io.out, obj);
}

// ---- inputs ----

// File arguments: a path or "-" for standard input. Malformed content is a data failure.
template <class F>
auto readInput(const Io& io, const std::string& path, F read) {
    try {
        if (path == "-") return read(io.in);
        std::ifstream f(path);
        if (!f) throw DataError("cannot open " + path);
        return read(f);
    } catch (const ParseError& e) {
        throw DataError(path + ": " + e.what());
    }
}

RationalLattice readLatticeArg(const Io& io, const std::string& path) {
    return readInput(io, path, [](std::istream& s) { return readLattice(s); });
}

// ---- commands ----

Json latticeSummary(const RationalLattice& l) {
    Json j;
    j["rank"] = l.rank();
    j["det"] = l.det().get_str();
    j["integral"] = l.isIntegral();
    j["even"] = l.isEven();
    j["minimum"] = l.rank() ? Json(minimumNorm(l).get_str()) : Json(nullptr);
    if (l.isIntegral()) {
        DiscriminantGroup d = discriminantGroup(l);
        j["discriminant"] = d.str();
        j["discriminantPrimary"] = d.primaryStr();
        j["discriminantOrder"] = d.order().get_str();
    } else {
        j["discriminant"] = nullptr;
    }
    if (l.isEven()) {
        RootDatum r = rootSystemOfEvenLattice(l);
        j["roots"] = r.rootCount();
        j["rootSystem"] = r.components.empty() ? "none" : r.str();
    }
    return j;
}

void cmdLatticeInfo(const Io& io, bool json, const std::string& path) {
    emitFields(io, json, latticeSummary(readLatticeArg(io, path)));
}

void cmdLatticeLll(const Io& io, bool json, const std::string& path) {
    RationalLattice l = readLatticeArg(io, path);
    ZMatrix t = lllTransform(l);
    RationalLattice r = lllReduce(l);
    if (json) {
        Json j = latticeJson(r);
        j["transform"] = matrixJson(t);
        io.out << j.dump(2) << '\n';
    } else {
        writeLattice(io.out, r);
    }
}

std::string classOfFrameShape(const FrameShape& fs) {
    for (const auto& c : leechClasses())
        if (c.frameShape == fs) return c.label;
    return "";
}

void cmdFrameShape(const Io& io, bool json, const std::string& isomPath, const std::string& latPath) {
    if (isomPath == "-" && latPath == "-") throw UsageError("at most one of the files can be standard input");
    RationalLattice l = readLatticeArg(io, latPath);
    ZMatrix m = readInput(io, isomPath, [](std::istream& s) { return readIsometry(s); });
    if (m.rows() != l.rank() || m.cols() != l.rank())
        throw DataError("isometry is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        " but the lattice has rank " + std::to_string(l.rank()));
    Isometry t;
    try {
        t = makeIsometry(l, m);
    } catch (const NotAnIsometry& e) {
        throw DataError(e.what());
    }
    Json j;
    j["frameShape"] = t.frameShape.str();
    j["order"] = t.order;
    j["fixedRank"] = fixedSublattice(l, t).rank();
    j["phi"] = twistedConformalWeight(t.frameShape).get_str();
    j["liftOrder"] = standardLiftOrder(l, t);
    std::string cls = classOfFrameShape(t.frameShape);
    j["class"] = cls.empty() ? Json(nullptr) : Json(cls);
    emitFields(io, json, j);
}

void cmdPhi(const Io& io, bool json, const std::string& text) {
    FrameShape fs = FrameShape::parse(text);
    Rat phi = twistedConformalWeight(fs);
    if (!json) {
        io.out << phi.get_str() << '\n';
        return;
    }
    Json j;
    j["frameShape"] = fs.str();
    j["phi"] = phi.get_str();
    j["fixedRank"] = fs.fixedDimension();
    j["degree"] = fs.degree();
    io.out << j.dump(2) << '\n';
}

void cmdConstruct(const Io& io, bool json, bool typeB, const std::string& moduliText,
                  const std::vector<std::string>& codes, const std::string& codeFile, bool info) {
    GlueCode code;
    if (!codeFile.empty()) {
        if (!moduliText.empty() || !codes.empty()) throw UsageError("--code-file excludes --moduli and --code");
        code = readInput(io, codeFile, [](std::istream& s) { return readGlueCode(s); });
    } else {
        if (moduliText.empty()) throw UsageError("--moduli is required");
        code.moduli = parseModuli(moduliText);
        for (const auto& c : codes) code.generators.push_back(parseCodeword(c, code.moduli));
    }
    RationalLattice l = typeB ? constructionB(code) : constructionA(code);
    if (!info) {
        emitLattice(io, json, l);
        return;
    }
    Json j;
    j["construction"] = typeB ? "B" : "A";
    Json mod = Json::array();
    for (long k : code.moduli) mod.push_back(k);
    j["moduli"] = mod;
    Json gens = Json::array();
    for (const auto& g : code.generators) gens.push_back(codewordString(g));
    j["code"] = gens;
    Json summary = latticeSummary(l);
    for (auto& [k, v] : summary.items()) j[k] = v;
    emitFields(io, json, j);
}

void cmdNiemeierList(const Io& io, bool json) {
    Json a = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& name : niemeierNames()) {
        NiemeierSpec s = niemeierSpec(name);
        Json j;
        j["name"] = name;
        j["h"] = s.h;
        j["roots"] = 24 * s.h;
        j["components"] = s.components.size();
        j["glueGenerators"] = s.glue.size();
        rows.push_back({name, std::to_string(s.h), std::to_string(24 * s.h), std::to_string(s.components.size()),
                        std::to_string(s.glue.size())});
        a.push_back(j);
    }
    if (json)
        io.out << a.dump(2) << '\n';
    else
        printTable(io.out, {"Name", "h", "Roots", "Components", "GlueGenerators"}, rows);
}

void cmdDeepHole(const Io& io, bool json, const std::string& name, bool verify) {
    const RationalLattice& n = niemeierLattice(name);
    DeepHole d = holeFromNiemeier(n);
    Json j;
    j["niemeier"] = name;
    j["h"] = d.h;
    j["holeType"] = d.holeType;
    j["betaNorm"] = d.norm.get_str();
    Int index = quotientIndex(d.kernel, n);
    j["index"] = index.get_str();
    std::vector<std::string> problems;
    if (index != d.h) problems.push_back("index is not h");
    if (verify) {
        bool unimodular = d.leech.isEven() && d.leech.det() == 1;
        bool rootless = shortVectors(d.leech, 2).empty();
        DeepHoleCertificate c = verifyDeepHole(d.leech, d.beta);
        std::string type = holeDiagramType(c.components);
        std::size_t nodes = 0;
        for (const auto& comp : c.components) nodes += comp.nodes.size();
        Json v;
        v["evenUnimodular"] = unimodular;
        v["rootless"] = rootless;
        v["deep"] = c.deep;
        v["minDistance"] = c.minDistance.get_str();
        v["diagram"] = type;
        v["nodes"] = nodes;
        Json mult = Json::array();
        for (long m : c.multipliers) mult.push_back(m);
        v["multipliers"] = mult;
        if (!c.reason.empty()) v["reason"] = c.reason;
        j["verify"] = v;
        if (!unimodular || !rootless) problems.push_back("neighbor is not a rootless even unimodular lattice");
        if (!c.deep) problems.push_back("not a deep hole: " + c.reason);
        if (type != d.holeType) problems.push_back("hole diagram " + type + " differs from " + d.holeType);
        if (nodes != 24 + c.components.size()) problems.push_back("node count " + std::to_string(nodes));
    }
    j["ok"] = problems.empty();
    emitFields(io, json, j);
    if (!problems.empty()) throw Mismatch(problems.front());
}

void cmdClassify(const Io& io, bool json, bool csv, const std::string& name, const std::string& code,
                 const std::string& label) {
    if (json && csv) throw UsageError("--json and --csv are exclusive");
    PairContext ctx = buildPair(name, code, label);
    ConditionReport cond = checkConditions(ctx);
    std::string embedding = ctx.embedding(), fixedRoots = ctx.scaledRoots.str(), v1 = ctx.v1.str();
    if (csv) {
        csvLine(io.out, {"Class", "Type", "Codeword", "Embedding", "FixedRoots", "V1"});
        csvLine(io.out, {label, name, code, embedding, fixedRoots, v1});
        return;
    }
    Json j;
    j["class"] = ctx.classLabel;
    j["niemeier"] = ctx.niemeierName;
    j["codeword"] = codewordString(ctx.codeword);
    j["frameShape"] = ctx.preservesLeech ? Json(ctx.tauLeech.frameShape.str()) : Json(nullptr);
    j["ell"] = ctx.ell;
    j["h"] = ctx.h;
    j["embedding"] = embedding;
    j["fixedRoots"] = fixedRoots;
    j["latticeRoots"] = ctx.latticeRoots.str();
    j["v1"] = v1;
    j["v1Dim"] = ctx.v1.totalDim;
    j["v1Rank"] = ctx.v1.totalRank;
    auto condJson = [](const ConditionCheck& c) {
        Json k;
        k["pass"] = c.pass;
        if (!c.witness.empty()) k["witness"] = c.witness;
        return k;
    };
    j["conditions"] = {{"C1", condJson(cond.c1)}, {"C2", condJson(cond.c2)}, {"C3", condJson(cond.c3)}};
    j["admissible"] = cond.all();
    emitFields(io, json, j);
}

void cmdTables(const Io& io, bool json, const std::optional<std::string>& csvPath, const std::string& onlyClass,
               unsigned threads) {
    if (json && csvPath) throw UsageError("--json and --csv are exclusive");
    const auto& stored = tableRows();
    if (!onlyClass.empty() &&
        std::none_of(stored.begin(), stored.end(), [&](const TableRow& r) { return r.classLabel == onlyClass; }))
        throw UnknownName("no table rows for class " + onlyClass);
    std::vector<ComputedRow> rows = computeTables(threads);
    if (!onlyClass.empty())
        std::erase_if(rows, [&](const ComputedRow& r) { return r.expected.classLabel != onlyClass; });
    long failures = std::count_if(rows.begin(), rows.end(), [](const ComputedRow& r) { return !r.ok(); });
    auto fields = [](const ComputedRow& r) {
        return std::vector<std::string>{r.expected.classLabel, r.expected.type, r.expected.printedCodeword,
                                        r.embedding,           r.fixedRoots,    r.v1};
    };
    if (csvPath) {
        std::ofstream file;
        if (*csvPath != "-") {
            file.open(*csvPath, std::ios::binary);
            if (!file) throw DataError("cannot write " + *csvPath);
        }
        std::ostream& os = *csvPath == "-" ? io.out : file;
        csvLine(os, {"Class", "Type", "Codeword", "Embedding", "FixedRoots", "V1"});
        for (const auto& r : rows) csvLine(os, fields(r));
    } else if (json) {
        Json a = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["class"] = r.expected.classLabel;
            j["type"] = r.expected.type;
            j["codeword"] = r.expected.printedCodeword;
            j["glueCoordinates"] = r.expected.codeword;
            j["embedding"] = r.embedding;
            j["fixedRoots"] = r.fixedRoots;
            j["v1"] = r.v1;
            j["conditions"] = r.conditions;
            j["invariants"] = r.invariants;
            j["ok"] = r.ok();
            if (!r.ok()) j["failure"] = r.failure;
            a.push_back(j);
        }
        io.out << a.dump(2) << '\n';
    } else {
        std::vector<std::vector<std::string>> text;
        for (const auto& r : rows) {
            auto f = fields(r);
            f.push_back(r.ok() ? "ok" : "MISMATCH");
            text.push_back(std::move(f));
        }
        printTable(io.out, {"Class", "Type", "Codeword", "Embedding", "R(N^tau)", "V1", "Check"}, text);
    }
    for (const auto& r : rows)
        if (!r.ok()) io.err << r.expected.classLabel << ' ' << r.expected.type << ": " << r.failure << '\n';
    if (failures) throw Mismatch(std::to_string(failures) + " rows differ from the stored tables");
}

void cmdValidate(const Io& io, bool json) {
    Json j;
    auto weights = golayCode().weightDistribution();
    Json w = Json::object();
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i]) w[std::to_string(i)] = weights[i];
    j["golay"] = w;
    for (const auto& name : niemeierNames()) {
        const RationalLattice& n = niemeierLattice(name);
        if (!n.isEven() || n.det() != 1) throw DataError(name + " is not even unimodular");
    }
    j["niemeier"] = niemeierNames().size();
    const RationalLattice& leech = leechLattice();
    long isometries = 0;
    for (const auto& c : leechClasses()) {
        if (!hasIsometryRepresentative(c.label)) continue;
        Isometry t = isometryRepresentative(c.label);
        if (!(t.frameShape == c.frameShape))
            throw DataError(c.label + " representative has frame shape " + t.frameShape.str());
        if (fixedSublattice(leech, t).rank() != static_cast<std::size_t>(c.fixedRank))
            throw DataError(c.label + " representative has the wrong fixed rank");
        ++isometries;
    }
    j["isometries"] = isometries;
    for (const auto& label : coinvariantLabels()) coinvariantModel(label);
    j["coinvariantModels"] = coinvariantLabels().size();
    j["dataDirectory"] = dataDirectory();
    emitFields(io, json, j);
}

void cmdSelftest(const Io& io, bool json, unsigned threads, bool timing) {
    AcceptanceOptions opts;
    opts.threads = threads;
    Json a = Json::array();
    int failed = 0;
    for (int id = 1; id <= kCriterionCount; ++id) {
        CriterionResult r = runCriterion(id, opts);
        failed += !r.pass;
        if (json) {
            Json j;
            j["criterion"] = r.id;
            j["title"] = r.title;
            j["pass"] = r.pass;
            j["detail"] = r.detail;
            if (timing) j["seconds"] = r.seconds;
            a.push_back(j);
            continue;
        }
        io.out << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "  [" << r.detail
               << ']';
        if (timing) io.out << " (" << static_cast<long>(r.seconds * 10) / 10.0 << " s)";
        io.out << std::endl;
    }
    if (json) io.out << a.dump(2) << '\n';
    if (failed) throw Mismatch(std::to_string(failed) + " criteria failed");
}

}  // namespace

int runCli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out, err};
    CLI::App app{"Exact lattice workbench: Leech and Niemeier lattices, deep holes and weight-one Lie algebras",
                 "deephole"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    unsigned threads = 0;
    app.add_option("--threads", threads, "Cap on worker threads (0: hardware concurrency)");

    bool json = false, table = false;
    auto modes = [&](CLI::App* sub) {
        auto* j = sub->add_flag("--json", json, "Machine-readable output");
        auto* t = sub->add_flag("--table", table, "Human-readable output (default)");
        j->excludes(t);
    };

    auto* lattice = app.add_subcommand("lattice", "Lattice files");
    lattice->require_subcommand(1);
    std::string latPath, isomPath;
    auto* info = lattice->add_subcommand("info", "Rank, determinant, parity, minimum, discriminant group, roots");
    info->add_option("file", latPath, "Lattice file or - for standard input")->required();
    modes(info);
    auto* lll = lattice->add_subcommand("lll", "LLL-reduced basis");
    lll->add_option("file", latPath, "Lattice file or - for standard input")->required();
    modes(lll);

    auto* fs = app.add_subcommand("frameshape", "Frame shape of an isometry");
    fs->add_option("isometry", isomPath, "Isometry file")->required();
    fs->add_option("lattice", latPath, "Lattice file")->required();
    modes(fs);

    std::string frameText;
    auto* phi = app.add_subcommand("phi", "Conformal weight of the twisted module");
    phi->add_option("--frameshape", frameText, "Frame shape such as \"1^8 2^8\"")->required();
    modes(phi);

    std::string moduliText, codeFile;
    std::vector<std::string> codes;
    bool constructInfo = false;
    std::vector<CLI::App*> construct;
    for (const char* which : {"construct-a", "construct-b"}) {
        auto* c = app.add_subcommand(which, std::string("Construction ") + (which[10] == 'a' ? "A" : "B") +
                                                " lattice of a glue code over A-type components");
        c->add_option("--moduli", moduliText, "k_1,...,k_t or 2^8");
        c->add_option("--code", codes, "Generator codeword such as 13|1|1 (repeatable)");
        c->add_option("--code-file", codeFile, "Code file with MODULI and GEN lines");
        c->add_flag("--info", constructInfo, "Print a summary instead of the lattice file");
        modes(c);
        construct.push_back(c);
    }

    auto* leech = app.add_subcommand("leech", "Lattice file of the Leech lattice (basis of the stored isometries)");
    modes(leech);

    auto* niemeier = app.add_subcommand("niemeier", "The 23 Niemeier lattices with roots");
    niemeier->require_subcommand(1);
    auto* list = niemeier->add_subcommand("list", "Names and Coxeter numbers");
    modes(list);
    std::string name;
    auto* build = niemeier->add_subcommand("build", "Lattice file of a Niemeier lattice");
    build->add_option("name", name, "Root system such as A5^4D4")->required();
    modes(build);

    bool verify = false;
    auto* deephole = app.add_subcommand("deephole", "Neighbor construction at the Weyl vector");
    deephole->add_option("--niemeier", name, "Root system such as A17E7")->required();
    deephole->add_flag("--verify", verify, "Certify the deep hole and its diagram");
    modes(deephole);

    std::string code, label;
    bool csv = false;
    auto* classify = app.add_subcommand("classify", "Classify a pair (N, glue codeword)");
    classify->add_option("--niemeier", name, "Root system in table notation")->required();
    classify->add_option("--code", code, "Glue codeword in the printed component order")->required();
    classify->add_option("--class", label, "Leech class label such as 2A")->required();
    classify->add_flag("--csv", csv, "One CSV row with a header");
    modes(classify);

    bool all = false;
    std::string csvPath, onlyClass;
    auto* tables = app.add_subcommand("tables", "Rebuild the 46 stored table rows");
    auto* allFlag = tables->add_flag("--all", all, "Every row");
    auto* classFlag = tables->add_option("--class", onlyClass, "Only the rows of one class");
    allFlag->excludes(classFlag);
    auto* csvOpt = tables->add_option("--csv", csvPath, "CSV output to a file, or standard output when omitted")
                       ->expected(0, 1);
    modes(tables);

    auto* validate = app.add_subcommand("validate", "Load and check every data file");
    modes(validate);

    bool timing = false;
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_flag("--timing", timing, "Report the running time of each criterion");
    modes(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? 0 : 2;
    }

    try {
        if (*info) cmdLatticeInfo(io, json, latPath);
        else if (*lll) cmdLatticeLll(io, json, latPath);
        else if (*fs) cmdFrameShape(io, json, isomPath, latPath);
        else if (*phi) cmdPhi(io, json, frameText);
        else if (*construct[0] || *construct[1])
            cmdConstruct(io, json, bool(*construct[1]), moduliText, codes, codeFile, constructInfo);
        else if (*leech) emitLattice(io, json, leechLattice());
        else if (*list) cmdNiemeierList(io, json);
        else if (*build) emitLattice(io, json, niemeierLattice(name));
        else if (*deephole) cmdDeepHole(io, json, name, verify);
        else if (*classify) cmdClassify(io, json, csv, name, code, label);
        else if (*tables) {
            if (!all && onlyClass.empty()) throw UsageError("tables needs --all or --class");
            std::optional<std::string> csvTarget;
            if (csvOpt->count()) csvTarget = csvPath.empty() ? "-" : csvPath;
            cmdTables(io, json, csvTarget, onlyClass, threads);
        } else if (*validate) cmdValidate(io, json);
        else if (*selftest) cmdSelftest(io, json, threads, timing);
        return 0;
    } catch (const Mismatch& e) {
        err << "mismatch: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    } catch (const UnknownName& e) {
        err << "usage: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        err << "data: " << e.what() << '\n';
        return 3;
    } catch (const MalformedLattice& e) {
        err << "data: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dh
