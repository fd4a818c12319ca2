#include "nflocus/certs.hpp"

#include <algorithm>

#include "nflocus/groebner.hpp"

namespace nflocus {

int cert_depth(const CertPtr& node) {
    if (!node) throw error("null certificate node");
    int best = 0;
    for (const auto& c : node->children) best = std::max(best, cert_depth(c));
    switch (node->kind) {
        case CertKind::BASE: return 0;
        case CertKind::SUM: return best;
        case CertKind::EXT:
        case CertKind::KER: return 1 + best;
    }
    throw error("bad certificate kind");
}

int cert_depth(const ResCert& cert) { return cert_depth(cert.root); }

FPModule base_target(const FPModule& X, const std::vector<int>& x_shifts,
                     const std::vector<int>& r_degs) {
    std::vector<FPModule> parts;
    for (int t : x_shifts) parts.push_back(shifted(X, t));
    if (!r_degs.empty()) parts.push_back(free_module(X.ring, r_degs));
    if (parts.empty()) return zero_module(X.ring);
    return direct_sum(parts).sum;
}

static void check_split(const FPModule& Y, const FPModule& target, const ModMap& section,
                        const ModMap& retraction, const char* what) {
    if (!module_equal(section.src, Y) || !module_equal(section.tgt, target) ||
        !module_equal(retraction.src, target) || !module_equal(retraction.tgt, Y))
        throw error(std::string(what) + ": section/retraction endpoints do not match");
    if (!map_equal(compose(retraction, section), identity_map(Y)))
        throw error(std::string(what) + ": retraction does not split the section");
}

CertPtr base_node(FPModule Y, const FPModule& X, std::vector<int> x_shifts,
                  std::vector<int> r_degs, ModMap section, ModMap retraction) {
    check_split(Y, base_target(X, x_shifts, r_degs), section, retraction, "base node");
    auto n = std::make_shared<CertNode>();
    n->kind = CertKind::BASE;
    n->module = std::move(Y);
    n->x_shifts = std::move(x_shifts);
    n->r_degs = std::move(r_degs);
    n->section = std::move(section);
    n->retraction = std::move(retraction);
    return n;
}

CertPtr ext_node(ShortExact seq, CertPtr sub, CertPtr quot) {
    if (!sub || !quot) throw error("extension node needs two children");
    if (!module_equal(seq.i.src, sub->module) || !module_equal(seq.p.tgt, quot->module) ||
        !module_equal(seq.i.tgt, seq.p.src))
        throw error("extension node: sequence endpoints do not match children");
    auto n = std::make_shared<CertNode>();
    n->kind = CertKind::EXT;
    n->module = seq.i.tgt;
    n->seq = std::move(seq);
    n->children = {std::move(sub), std::move(quot)};
    return n;
}

CertPtr ker_node(ShortExact seq, CertPtr mid, CertPtr quot) {
    if (!mid || !quot) throw error("kernel node needs two children");
    if (!module_equal(seq.i.tgt, mid->module) || !module_equal(seq.p.src, mid->module) ||
        !module_equal(seq.p.tgt, quot->module))
        throw error("kernel node: sequence endpoints do not match children");
    auto n = std::make_shared<CertNode>();
    n->kind = CertKind::KER;
    n->module = seq.i.src;
    n->seq = std::move(seq);
    n->children = {std::move(mid), std::move(quot)};
    return n;
}

CertPtr sum_node(FPModule Y, ModMap section, ModMap retraction, std::vector<CertPtr> parts) {
    if (parts.empty()) throw error("sum node needs children");
    std::vector<FPModule> mods;
    for (const auto& c : parts) mods.push_back(c->module);
    check_split(Y, direct_sum(mods).sum, section, retraction, "sum node");
    auto n = std::make_shared<CertNode>();
    n->kind = CertKind::SUM;
    n->module = std::move(Y);
    n->section = std::move(section);
    n->retraction = std::move(retraction);
    n->children = std::move(parts);
    return n;
}

ResCert cert_base_self(const FPModule& X) {
    auto id = identity_map(X);
    return ResCert{X, base_node(X, X, {0}, {}, id, id)};
}

ResCert cert_base_free(const FPModule& X, const FPModule& F) {
    if (!F.rels.empty()) throw error("free base node: module has relations");
    auto id = identity_map(F);
    return ResCert{X, base_node(F, X, {}, F.gen_degrees, id, id)};
}

CertPtr shift_node(const CertPtr& node, int t) {
    if (t == 0) return node;
    auto n = std::make_shared<CertNode>(*node);
    n->module = shifted(node->module, t);
    for (int& s : n->x_shifts) s += t;
    for (int& d : n->r_degs) d += t;
    if (node->kind == CertKind::BASE || node->kind == CertKind::SUM) {
        n->section = shifted(node->section, t);
        n->retraction = shifted(node->retraction, t);
    }
    if (node->kind == CertKind::EXT || node->kind == CertKind::KER) {
        n->seq.i = shifted(node->seq.i, t);
        n->seq.p = shifted(node->seq.p, t);
    }
    n->children.clear();
    for (const auto& c : node->children) n->children.push_back(shift_node(c, t));
    return n;
}

// ---- verification ----

namespace {

struct Verifier {
    const FPModule& X;
    std::string diag;

    bool fail(const std::string& path, const std::string& why) {
        diag = path + ": " + why;
        return false;
    }

    bool check_map(const ModMap& f, const FPModule& src, const FPModule& tgt,
                   const std::string& path, const char* label) {
        if (!module_equal(f.src, src) || !module_equal(f.tgt, tgt))
            return fail(path, std::string(label) + " endpoints do not match the node structure");
        try {
            (void)make_map(f.src, f.tgt, f.cols);
        } catch (const error& e) {
            return fail(path, std::string(label) + " is not a module map: " + e.what());
        }
        return true;
    }

    // 0 -> A --i--> B --p--> C -> 0
    bool check_exact(const ShortExact& s, const FPModule& A, const FPModule& B,
                     const FPModule& C, const std::string& path) {
        if (!check_map(s.i, A, B, path, "injection") || !check_map(s.p, B, C, path, "projection"))
            return false;
        if (!is_zero_map(compose(s.p, s.i))) return fail(path, "composite p after i is nonzero");
        if (!is_zero_module(kernel(s.i).ker)) return fail(path, "injection has a kernel");
        if (!is_zero_module(cokernel(s.p).coker)) return fail(path, "projection is not onto");
        auto Q = B.ring;
        std::vector<Vec> span = s.i.cols;
        span.insert(span.end(), B.rels.begin(), B.rels.end());
        auto gb = rgb(*Q, span, B.rank());
        for (const auto& col : kernel(s.p).incl.cols)
            if (!rmember(*Q, col, gb))
                return fail(path, "kernel of the projection exceeds the image of the injection");
        return true;
    }

    bool split_ok(const CertNode& n, const FPModule& target, const std::string& path) {
        if (!check_map(n.section, n.module, target, path, "section") ||
            !check_map(n.retraction, target, n.module, path, "retraction"))
            return false;
        if (!map_equal(compose(n.retraction, n.section), identity_map(n.module)))
            return fail(path, "retraction composed with section is not the identity");
        return true;
    }

    bool walk(const CertPtr& node, const std::string& path) {
        if (!node) return fail(path, "missing node");
        const CertNode& n = *node;
        if (!same_ring(*n.module.ring, *X.ring)) return fail(path, "node over a different ring");
        switch (n.kind) {
            case CertKind::BASE: {
                if (!n.children.empty()) return fail(path, "base node has children");
                return split_ok(n, base_target(X, n.x_shifts, n.r_degs), path);
            }
            case CertKind::SUM: {
                if (n.children.empty()) return fail(path, "sum node has no children");
                std::vector<FPModule> mods;
                for (const auto& c : n.children) mods.push_back(c->module);
                if (!split_ok(n, direct_sum(mods).sum, path)) return false;
                break;
            }
            case CertKind::EXT: {
                if (n.children.size() != 2) return fail(path, "extension node needs two children");
                if (!check_exact(n.seq, n.children[0]->module, n.module, n.children[1]->module,
                                 path))
                    return false;
                break;
            }
            case CertKind::KER: {
                if (n.children.size() != 2) return fail(path, "kernel node needs two children");
                if (!check_exact(n.seq, n.module, n.children[0]->module, n.children[1]->module,
                                 path))
                    return false;
                break;
            }
        }
        for (size_t k = 0; k < n.children.size(); k++)
            if (!walk(n.children[k], path + ".children[" + std::to_string(k) + "]")) return false;
        return true;
    }
};

}  // namespace

VerifyResult verify_cert(const ResCert& cert, const FPModule& X, const FPModule& Y) {
    VerifyResult out;
    if (!cert.root) {
        out.diag = "root: missing node";
        return out;
    }
    if (!module_equal(cert.base, X)) {
        out.diag = "root: certificate base module differs from the claimed base";
        return out;
    }
    Verifier v{X, {}};
    try {
        if (!v.walk(cert.root, "root")) {
            out.diag = v.diag;
            return out;
        }
        if (!equal_up_to_shift(min_presentation(cert.root->module), min_presentation(Y))) {
            out.diag = "root: certified module differs from the claimed module";
            return out;
        }
        out.depth = cert_depth(cert.root);
    } catch (const error& e) {
        out.diag = std::string("root: ") + e.what();
        return out;
    }
    out.ok = true;
    return out;
}

// ---- composition ----

static CertPtr graft(const CertPtr& node, const ResCert& c1) {
    if (node->kind == CertKind::BASE) {
        if (node->x_shifts.empty()) return node;  // purely free: already valid over the new base
        std::vector<CertPtr> parts;
        for (int t : node->x_shifts) parts.push_back(shift_node(c1.root, t));
        if (!node->r_degs.empty()) {
            FPModule F = free_module(node->module.ring, node->r_degs);
            auto id = identity_map(F);
            parts.push_back(base_node(F, c1.base, {}, node->r_degs, id, id));
        }
        return sum_node(node->module, node->section, node->retraction, std::move(parts));
    }
    auto n = std::make_shared<CertNode>(*node);
    n->children.clear();
    for (const auto& c : node->children) n->children.push_back(graft(c, c1));
    return n;
}

ResCert compose_certs(const ResCert& c1, const ResCert& c2) {
    if (!module_equal(c2.base, c1.root->module))
        throw error("certificate composition: inner base differs from outer module");
    return ResCert{c1.base, graft(c2.root, c1)};
}

// ---- serialization ----

static json matrix_to_json(const std::vector<Vec>& cols) {
    json out = json::array();
    for (const auto& col : cols) {
        json jc = json::array();
        for (const auto& f : col) jc.push_back(f.str());
        out.push_back(jc);
    }
    return out;
}

static std::vector<Vec> matrix_from_json(const BaseRing* B, const json& j, size_t rank) {
    std::vector<Vec> cols;
    for (const auto& jc : j) {
        Vec col;
        for (const auto& e : jc) col.push_back(B->parse(e.get<std::string>()));
        if (col.size() != rank) throw error("matrix column has the wrong length");
        cols.push_back(std::move(col));
    }
    return cols;
}

json ring_to_json(const QuotRing& Q) {
    json j;
    j["vars"] = Q.base->vars;
    j["char"] = Q.base->p;
    j["weights"] = Q.base->weights;
    json defs = json::array();
    for (const auto& f : Q.defining) defs.push_back(f.str());
    j["defining"] = defs;
    return j;
}

std::shared_ptr<const QuotRing> ring_from_json(const json& j) {
    auto B = BaseRing::make(j.at("vars").get<std::vector<std::string>>(),
                            j.at("char").get<uint32_t>(), j.at("weights").get<std::vector<int>>());
    std::vector<Poly> defs;
    for (const auto& e : j.at("defining")) defs.push_back(B->parse(e.get<std::string>()));
    return QuotRing::make(B, std::move(defs));
}

json module_to_json(const FPModule& M) {
    json j;
    j["degrees"] = M.gen_degrees;
    j["relations"] = matrix_to_json(M.rels);
    return j;
}

FPModule module_from_json(std::shared_ptr<const QuotRing> Q, const json& j) {
    auto degs = j.at("degrees").get<std::vector<int>>();
    auto rels = matrix_from_json(Q->base.get(), j.at("relations"), degs.size());
    return make_module(std::move(Q), std::move(degs), std::move(rels));
}

static const char* kind_name(CertKind k) {
    switch (k) {
        case CertKind::BASE: return "base";
        case CertKind::EXT: return "ext";
        case CertKind::KER: return "ker";
        case CertKind::SUM: return "sum";
    }
    throw error("bad certificate kind");
}

static json node_to_json(const CertPtr& node) {
    const CertNode& n = *node;
    json j;
    j["kind"] = kind_name(n.kind);
    j["module"] = module_to_json(n.module);
    switch (n.kind) {
        case CertKind::BASE:
            j["x_shifts"] = n.x_shifts;
            j["r_degs"] = n.r_degs;
            j["section"] = matrix_to_json(n.section.cols);
            j["retraction"] = matrix_to_json(n.retraction.cols);
            break;
        case CertKind::SUM:
            j["section"] = matrix_to_json(n.section.cols);
            j["retraction"] = matrix_to_json(n.retraction.cols);
            break;
        case CertKind::EXT:
        case CertKind::KER:
            j["i"] = matrix_to_json(n.seq.i.cols);
            j["p"] = matrix_to_json(n.seq.p.cols);
            break;
    }
    if (!n.children.empty()) {
        json kids = json::array();
        for (const auto& c : n.children) kids.push_back(node_to_json(c));
        j["children"] = kids;
    }
    return j;
}

json cert_to_json(const ResCert& cert) {
    json j;
    j["format"] = "rescert/1";
    j["ring"] = ring_to_json(*cert.base.ring);
    j["base"] = module_to_json(cert.base);
    j["bound"] = cert_depth(cert.root);
    j["root"] = node_to_json(cert.root);
    return j;
}

static CertPtr node_from_json(const FPModule& X, const json& j) {
    auto Q = X.ring;
    const BaseRing* B = Q->base.get();
    std::string kind = j.at("kind").get<std::string>();
    FPModule M = module_from_json(Q, j.at("module"));
    std::vector<CertPtr> children;
    if (j.contains("children"))
        for (const auto& jc : j.at("children")) children.push_back(node_from_json(X, jc));

    if (kind == "base") {
        if (!children.empty()) throw error("base node has children");
        auto x_shifts = j.at("x_shifts").get<std::vector<int>>();
        auto r_degs = j.at("r_degs").get<std::vector<int>>();
        FPModule T = base_target(X, x_shifts, r_degs);
        ModMap sec = make_map(M, T, matrix_from_json(B, j.at("section"), T.rank()));
        ModMap ret = make_map(T, M, matrix_from_json(B, j.at("retraction"), M.rank()));
        return base_node(std::move(M), X, std::move(x_shifts), std::move(r_degs), std::move(sec),
                         std::move(ret));
    }
    if (kind == "sum") {
        if (children.empty()) throw error("sum node has no children");
        std::vector<FPModule> mods;
        for (const auto& c : children) mods.push_back(c->module);
        FPModule T = direct_sum(mods).sum;
        ModMap sec = make_map(M, T, matrix_from_json(B, j.at("section"), T.rank()));
        ModMap ret = make_map(T, M, matrix_from_json(B, j.at("retraction"), M.rank()));
        return sum_node(std::move(M), std::move(sec), std::move(ret), std::move(children));
    }
    if (kind == "ext" || kind == "ker") {
        if (children.size() != 2) throw error("sequence node needs two children");
        ShortExact seq;
        if (kind == "ext") {
            seq.i = make_map(children[0]->module, M, matrix_from_json(B, j.at("i"), M.rank()));
            seq.p = make_map(M, children[1]->module,
                             matrix_from_json(B, j.at("p"), children[1]->module.rank()));
            return ext_node(std::move(seq), children[0], children[1]);
        }
        seq.i = make_map(M, children[0]->module,
                         matrix_from_json(B, j.at("i"), children[0]->module.rank()));
        seq.p = make_map(children[0]->module, children[1]->module,
                         matrix_from_json(B, j.at("p"), children[1]->module.rank()));
        return ker_node(std::move(seq), children[0], children[1]);
    }
    throw error("unknown certificate node kind: " + kind);
}

ResCert cert_from_json(const json& j) {
    if (j.at("format").get<std::string>() != "rescert/1")
        throw error("unsupported certificate format");
    auto Q = ring_from_json(j.at("ring"));
    FPModule base = module_from_json(Q, j.at("base"));
    ResCert cert{base, node_from_json(base, j.at("root"))};
    if (j.at("bound").get<int>() != cert_depth(cert.root))
        throw error("certificate bound does not match the tree depth");
    return cert;
}

}  // namespace nflocus
