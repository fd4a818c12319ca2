#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "nflocus/constructions.hpp"
#include "nflocus/corpus.hpp"
#include "nflocus/session.hpp"

using namespace nflocus;

namespace {

// exit 2; anything the user handed us that fails before computation starts
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// exit 1; a certificate or cross-check failed
struct verify_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string output;
    std::string format = "text";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;
};

SessionInput load_session(const Options& o) {
    if (o.input.empty()) throw input_error("no session given (use --input <file>)");
    std::ifstream f(o.input);
    if (!f) throw input_error("cannot read '" + o.input + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_session(ss.str());
    } catch (const error& e) {
        throw input_error(o.input + ": " + e.what());
    }
}

const FPModule& need_module(const SessionInput& s, const std::string& name) {
    const FPModule* m = s.find_module(name);
    if (!m) throw input_error("unknown module '" + name + "'");
    return *m;
}

const HomPrime& need_prime(const SessionInput& s, const std::string& name) {
    const HomPrime* p = s.find_prime(name);
    if (!p) throw input_error("unknown prime '" + name + "'");
    return *p;
}

std::string prime_text(const HomPrime& p) {
    std::string out = "(";
    for (size_t j = p.gens.size(); j-- > 0;) {
        out += p.gens[j].str();
        if (j) out += ", ";
    }
    return out + ")";
}

json subset_json(const ClosedSubset& Z) {
    json out = json::array();
    for (const auto& p : Z.primes) {
        json gens = json::array();
        for (size_t j = p.gens.size(); j-- > 0;) gens.push_back(p.gens[j].str());
        out.push_back(std::move(gens));
    }
    return out;
}

std::string module_text(const FPModule& M) {
    std::ostringstream os;
    os << "generators (degrees):";
    for (int d : M.gen_degrees) os << " " << d;
    os << "\nrelations:";
    if (M.rels.empty()) os << " none";
    os << "\n";
    for (const auto& col : M.rels) {
        os << "  [";
        for (size_t i = 0; i < col.size(); i++) os << (i ? ", " : "") << col[i].str();
        os << "]\n";
    }
    return os.str();
}

/// Report goes to stdout in the chosen format; --output receives the
/// certificate when one exists, otherwise a copy of the report.
void emit(const Options& o, const json& report, const std::string& text,
          const json* cert = nullptr) {
    std::string payload = o.format == "json" ? report.dump(2) + "\n" : text;
    std::cout << payload;
    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) throw input_error("cannot write '" + o.output + "'");
        f << (cert ? cert->dump(2) + "\n" : payload);
    }
}

json trace_json(const DescentTrace& tr) {
    json steps = json::array();
    for (const auto& st : tr.steps)
        steps.push_back({{"element", st.x.str()}, {"locus", subset_json(st.locus)}});
    return {{"steps", steps},
            {"module", module_to_json(tr.result)},
            {"locus", subset_json(tr.locus)},
            {"bound", tr.bound}};
}

std::string trace_text(const DescentTrace& tr, const std::string& head) {
    std::ostringstream os;
    os << head << "\n";
    for (size_t i = 0; i < tr.steps.size(); i++)
        os << "step " << i + 1 << ": pushout along " << tr.steps[i].x.str() << " -> NF = "
           << tr.steps[i].locus.str() << "\n";
    os << "result locus: " << tr.locus.str() << "\n";
    os << "result:\n" << module_text(tr.result);
    os << "step bound: " << tr.bound << "\n";
    return os.str();
}

int cmd_nf(const Options& o, const std::string& name) {
    auto s = load_session(o);
    const FPModule& X = need_module(s, name);
    ClosedSubset a = nonfree_locus(X);
    ClosedSubset b = nonfree_locus_fitting(X);
    bool agree = subset_equal(a, b);
    json rep{{"command", "nf"},
             {"ring", ring_to_json(*s.ring)},
             {"module", name},
             {"nonfree_locus", subset_json(a)},
             {"fitting_route", subset_json(b)},
             {"agree", agree}};
    std::ostringstream os;
    os << "NF(" << name << ") = " << a.str() << "\n";
    os << "fitting route  = " << b.str() << "\n";
    os << "oracle agreement: " << (agree ? "yes" : "NO") << "\n";
    emit(o, rep, os.str());
    if (!agree) throw verify_failure("locus routes disagree on '" + name + "'");
    return 0;
}

int cmd_syzygy(const Options& o, const std::string& name, int n) {
    if (n < 0 || n > 32) throw input_error("syzygy index must be between 0 and 32");
    auto s = load_session(o);
    FPModule M = need_module(s, name);
    for (int i = 0; i < n; i++) M = omega_step(M).omega;
    M = min_presentation(M);
    json rep{{"command", "syzygy"},
             {"ring", ring_to_json(*s.ring)},
             {"module", name},
             {"index", n},
             {"syzygy", module_to_json(M)}};
    std::ostringstream os;
    os << "syzygy " << n << " of " << name << ":\n" << module_text(M);
    emit(o, rep, os.str());
    return 0;
}

int cmd_ext1(const Options& o, const std::string& an, const std::string& bn) {
    auto s = load_session(o);
    const FPModule& A = need_module(s, an);
    const FPModule& B = need_module(s, bn);
    FPModule E = ext_module(A, B, 1);
    json rep{{"command", "ext1"},
             {"ring", ring_to_json(*s.ring)},
             {"modules", {an, bn}},
             {"ext1", module_to_json(E)},
             {"zero", is_zero_module(E)}};
    std::ostringstream os;
    os << "Ext^1(" << an << ", " << bn << ")";
    if (is_zero_module(E)) {
        os << " = 0\n";
    } else {
        os << ":\n" << module_text(E);
    }
    emit(o, rep, os.str());
    return 0;
}

int cmd_pushout(const Options& o, const std::string& name, const std::string& elt) {
    auto s = load_session(o);
    const FPModule& X = need_module(s, name);
    Poly x(s.ring->base.get());
    try {
        x = s.ring->base->parse(elt);
    } catch (const error& e) {
        throw input_error("element '" + elt + "': " + e.what());
    }
    if (!x.is_homogeneous()) throw input_error("element '" + elt + "' is not homogeneous");
    if (rnf(*s.ring, x).is_zero()) throw input_error("element '" + elt + "' is zero in the ring");
    if (x.is_unit() || x.wdeg() <= 0)
        throw input_error("element must lie in the maximal ideal");
    if (nonfree_locus_fitting(X).is_empty())
        throw input_error("module '" + name + "' is free; nothing to push");

    StepResult st = pushout_step(X, x);
    json cert = cert_to_json(st.cert);
    json rep{{"command", "pushout"},
             {"ring", ring_to_json(*s.ring)},
             {"module", name},
             {"element", x.str()},
             {"result", module_to_json(st.module)},
             {"locus", subset_json(st.locus)},
             {"bound", cert_depth(st.cert)}};
    std::ostringstream os;
    os << "pushout of " << name << " along " << x.str() << ":\n" << module_text(st.module);
    os << "NF = " << st.locus.str() << "\n";
    os << "certificate depth " << cert_depth(st.cert) << " over " << name << "\n";
    emit(o, rep, os.str(), &cert);
    return 0;
}

int cmd_realize(const Options& o, const std::string& name, const std::vector<std::string>& pnames) {
    auto s = load_session(o);
    const FPModule& X = need_module(s, name);
    ClosedSubset W = empty_subset(s.ring);
    for (const auto& pn : pnames)
        W = subset_union(W, closed_subset(s.ring, need_prime(s, pn)));
    ClosedSubset nf = nonfree_locus_fitting(X);
    if (!subset_contains(nf, W))
        throw input_error("target is not inside NF(" + name + ") = " + nf.str());

    DescentTrace tr = realize(X, W, o.jobs);
    json cert = cert_to_json(tr.cert);
    json rep{{"command", "realize"},
             {"ring", ring_to_json(*s.ring)},
             {"module", name},
             {"target", subset_json(W)},
             {"trace", trace_json(tr)}};
    emit(o, rep, trace_text(tr, "realize " + name + " at " + W.str()), &cert);
    return 0;
}

int cmd_punctured(const Options& o, const std::string& name, const std::string& pname) {
    auto s = load_session(o);
    const FPModule& X = need_module(s, name);
    HomPrime p;
    if (pname.empty()) {
        std::vector<Poly> vars;
        for (size_t i = 0; i < s.ring->base->nvars(); i++)
            vars.push_back(s.ring->maximal_ideal_gen(i));
        p = make_prime(s.ring, vars);
    } else {
        p = need_prime(s, pname);
    }
    ClosedSubset nf = nonfree_locus_fitting(X);
    if (!contains_prime(nf, p))
        throw input_error("prime is outside NF(" + name + ") = " + nf.str());

    DescentTrace tr = punctured_descent(X, p);
    json cert = cert_to_json(tr.cert);
    json rep{{"command", "punctured"},
             {"ring", ring_to_json(*s.ring)},
             {"module", name},
             {"prime", subset_json(closed_subset(s.ring, p))[0]},
             {"trace", trace_json(tr)},
             {"height", height_in(nf, p)}};
    std::ostringstream os;
    os << trace_text(tr, "descent of " + name + " at " + prime_text(p));
    os << "step bound " << tr.bound << " <= 2*height = " << 2 * height_in(nf, p) << "\n";
    emit(o, rep, os.str(), &cert);
    return 0;
}

int cmd_verify(const Options& o, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("cannot read '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(path + ": " + e.what());
    }
    ResCert cert;
    try {
        cert = cert_from_json(j);
    } catch (const error& e) {
        throw verify_failure(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        // well-formed JSON that is not a certificate
        throw verify_failure(path + ": " + e.what());
    }
    VerifyResult res = verify_cert(cert, cert.base, cert.root->module);
    json rep{{"command", "verify"},
             {"file", path},
             {"ok", res.ok},
             {"depth", res.depth},
             {"diagnostic", res.diag}};
    std::ostringstream os;
    if (res.ok) {
        os << "certificate verifies: depth " << res.depth << "\n";
    } else {
        os << "certificate REJECTED at " << res.diag << "\n";
    }
    emit(o, rep, os.str());
    if (!res.ok) throw verify_failure(path + ": " + res.diag);
    return 0;
}

int cmd_sing(const Options& o) {
    auto s = load_session(o);
    ClosedSubset Z;
    try {
        Z = sing_locus_hypersurface(s.ring);
    } catch (const error& e) {
        throw input_error(e.what());
    }
    json rep{{"command", "sing"}, {"ring", ring_to_json(*s.ring)}, {"locus", subset_json(Z)}};
    emit(o, rep, "singular locus = " + Z.str() + "\n");
    return 0;
}

int cmd_corpus(const Options& o, const std::string& family, const std::string& param) {
    if (family == "random" && !o.seed_set)
        throw input_error("random corpus requires an explicit --seed");
    std::vector<CorpusItem> items;
    try {
        items = example_corpus(family, param, o.seed);
    } catch (const error& e) {
        throw input_error(e.what());
    }
    json list = json::array();
    std::ostringstream os;
    for (const auto& it : items) {
        list.push_back({{"label", it.label},
                        {"ring", ring_to_json(*it.ring)},
                        {"module", module_to_json(it.module)}});
        os << it.label << " over " << it.ring->desc() << "\n" << module_text(it.module);
    }
    json rep{{"command", "corpus"}, {"family", family}, {"param", param}, {"items", list}};
    emit(o, rep, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonfree loci of graded modules, with res-membership certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("-i,--input", o.input, "session file (ring/module/prime declarations)");
    app.add_option("-o,--output", o.output, "write the certificate (or a report copy) here");
    app.add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "seed for randomized corpus generation")
        ->each([&](const std::string&) { o.seed_set = true; });
    app.add_option("--jobs", o.jobs, "worker threads for per-component realization")
        ->check(CLI::PositiveNumber);

    std::function<int()> run;
    std::string mod, elt, prime_name, an, bn, path, family, param;
    std::vector<std::string> prime_names;
    int index = 1;

    auto* nf = app.add_subcommand("nf", "nonfree locus by both routes, with agreement check");
    nf->add_option("module", mod)->required();
    nf->callback([&] { run = [&] { return cmd_nf(o, mod); }; });

    auto* syz = app.add_subcommand("syzygy", "n-th syzygy module");
    syz->add_option("module", mod)->required();
    syz->add_option("n", index)->required();
    syz->callback([&] { run = [&] { return cmd_syzygy(o, mod, index); }; });

    auto* ext = app.add_subcommand("ext1", "Ext^1 between two named modules");
    ext->add_option("A", an)->required();
    ext->add_option("B", bn)->required();
    ext->callback([&] { run = [&] { return cmd_ext1(o, an, bn); }; });

    auto* push = app.add_subcommand("pushout", "one pushout step along a ring element");
    push->add_option("module", mod)->required();
    push->add_option("element", elt)->required();
    push->callback([&] { run = [&] { return cmd_pushout(o, mod, elt); }; });

    auto* rea = app.add_subcommand("realize", "realize a union of prime varieties as a nonfree locus");
    rea->add_option("module", mod)->required();
    rea->add_option("primes", prime_names, "prime names; their varieties are unioned")->required();
    rea->callback([&] { run = [&] { return cmd_realize(o, mod, prime_names); }; });

    auto* pun = app.add_subcommand("punctured", "descend until free away from a prime");
    pun->add_option("module", mod)->required();
    pun->add_option("prime", prime_name, "defaults to the irrelevant maximal ideal");
    pun->callback([&] { run = [&] { return cmd_punctured(o, mod, prime_name); }; });

    auto* ver = app.add_subcommand("verify", "re-check a certificate file");
    ver->add_option("cert", path)->required();
    ver->callback([&] { run = [&] { return cmd_verify(o, path); }; });

    auto* sing = app.add_subcommand("sing", "singular locus of the session hypersurface");
    sing->callback([&] { run = [&] { return cmd_sing(o); }; });

    auto* cor = app.add_subcommand("corpus", "emit an example family");
    cor->add_option("family", family, "In, pf, or random")->required();
    cor->add_option("param", param, "n, f, or count")->required();
    cor->callback([&] { run = [&] { return cmd_corpus(o, family, param); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run ? run() : 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const verify_failure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
