#include "nflocus/session.hpp"

#include <cctype>

namespace nflocus {

const FPModule* SessionInput::find_module(const std::string& name) const {
    for (auto& [n, m] : modules)
        if (n == name) return &m;
    return nullptr;
}

const HomPrime* SessionInput::find_prime(const std::string& name) const {
    for (auto& [n, p] : primes)
        if (n == name) return &p;
    return nullptr;
}

namespace {

struct Scanner {
    const std::string& text;
    size_t i = 0;
    int line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
    }
    [[noreturn]] void fail_at(int l, int c, const std::string& msg) const {
        throw error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg);
    }

    bool done() const { return i >= text.size(); }
    char peek() const { return done() ? '\0' : text[i]; }
    char get() {
        char c = text[i++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }
    void skip() {
        while (!done()) {
            char c = peek();
            if (std::isspace((unsigned char)c)) {
                get();
            } else if (c == '#') {
                while (!done() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }
    bool eat(char c) {
        skip();
        if (peek() != c) return false;
        get();
        return true;
    }
    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    std::string ident() {
        skip();
        if (!std::isalpha((unsigned char)peek()) && peek() != '_') fail("expected a name");
        std::string s;
        while (std::isalnum((unsigned char)peek()) || peek() == '_') s += get();
        return s;
    }
    bool peek_ident(const std::string& kw) {
        skip();
        size_t j = i;
        for (char c : kw) {
            if (j >= text.size() || text[j] != c) return false;
            j++;
        }
        return j >= text.size() || !std::isalnum((unsigned char)text[j]);
    }
    long integer() {
        skip();
        bool neg = false;
        if (peek() == '-') {
            get();
            neg = true;
        }
        if (!std::isdigit((unsigned char)peek())) fail("expected an integer");
        long v = 0;
        while (std::isdigit((unsigned char)peek())) {
            v = v * 10 + (get() - '0');
            if (v > 1'000'000'000L) fail("integer out of range");
        }
        return neg ? -v : v;
    }

    /// Raw source up to a `,` `]` `)` or `;` at parenthesis depth zero.
    std::string entry() {
        skip();
        int l = line, c = col;
        size_t start = i;
        int depth = 0;
        while (!done()) {
            char ch = peek();
            if (ch == '(') depth++;
            if (ch == ')' && depth == 0) break;
            if (ch == ')') depth--;
            if (depth == 0 && (ch == ',' || ch == ']' || ch == ';')) break;
            get();
        }
        std::string raw = text.substr(start, i - start);
        while (!raw.empty() && std::isspace((unsigned char)raw.back())) raw.pop_back();
        if (raw.empty()) fail_at(l, c, "empty entry");
        return raw;
    }
};

Poly parse_entry(Scanner& sc, const BaseRing* R) {
    sc.skip();
    int l = sc.line, c = sc.col;
    std::string raw = sc.entry();
    try {
        return R->parse(raw);
    } catch (const error& e) {
        sc.fail_at(l, c, std::string(e.what()) + " in '" + raw + "'");
    }
}

// generator degrees making the relation matrix homogeneous: propagate along
// nonzero entries, anchoring the first generator of each component at zero
std::vector<int> infer_degrees(Scanner& sc, int l, int c, const std::vector<std::vector<Poly>>& rows) {
    size_t g = rows.size(), cc = rows[0].size();
    std::vector<int> entry_deg(g * cc, INT_MIN);
    for (size_t r = 0; r < g; r++)
        for (size_t j = 0; j < cc; j++) {
            const Poly& e = rows[r][j];
            if (e.is_zero()) continue;
            if (!e.is_homogeneous())
                sc.fail_at(l, c, "matrix entry '" + e.str() + "' is not homogeneous");
            entry_deg[r * cc + j] = e.ring()->wdeg(e.lead().m);
        }
    std::vector<int> gen(g, INT_MIN), rel(cc, INT_MIN);
    for (size_t anchor = 0; anchor < g; anchor++) {
        if (gen[anchor] != INT_MIN) continue;
        gen[anchor] = 0;
        bool moved = true;
        while (moved) {
            moved = false;
            for (size_t r = 0; r < g; r++)
                for (size_t j = 0; j < cc; j++) {
                    int d = entry_deg[r * cc + j];
                    if (d == INT_MIN) continue;
                    if (gen[r] != INT_MIN && rel[j] == INT_MIN) {
                        rel[j] = gen[r] + d;
                        moved = true;
                    } else if (rel[j] != INT_MIN && gen[r] == INT_MIN) {
                        gen[r] = rel[j] - d;
                        moved = true;
                    } else if (gen[r] != INT_MIN && rel[j] != gen[r] + d) {
                        sc.fail_at(l, c, "matrix is not homogeneous for any generator degrees");
                    }
                }
        }
    }
    return gen;
}

void check_fresh(Scanner& sc, const SessionInput& s, const std::string& name) {
    if (name == s.ring_name || s.find_module(name) || s.find_prime(name))
        sc.fail("duplicate name '" + name + "'");
}

void parse_ring_stmt(Scanner& sc, SessionInput& s) {
    if (s.ring) sc.fail("only one ring declaration is allowed");
    s.ring_name = sc.ident();
    sc.expect('=');
    std::string field = sc.ident();
    long p = -1;
    if (field == "Q" || field == "k") {
        p = field == "Q" ? 0 : -1;
    } else if (field.size() > 1 && field[0] == 'F') {
        p = 0;
        for (size_t j = 1; j < field.size(); j++) {
            if (!std::isdigit((unsigned char)field[j])) sc.fail("unknown field '" + field + "'");
            p = p * 10 + (field[j] - '0');
        }
        if (p < 2) sc.fail("field characteristic must be at least 2");
    } else {
        sc.fail("unknown field '" + field + "' (use Q, k, or F<p>)");
    }
    sc.expect('[');
    std::vector<std::string> vars;
    do {
        vars.push_back(sc.ident());
    } while (sc.eat(','));
    sc.expect(']');

    std::vector<std::string> raw_defs;
    if (sc.eat('/')) {
        sc.expect('(');
        do {
            raw_defs.push_back(sc.entry());
        } while (sc.eat(','));
        sc.expect(')');
    }
    long ch = -1;
    std::vector<int> weights;
    while (true) {
        if (sc.peek_ident("char")) {
            (void)sc.ident();
            ch = sc.integer();
            if (ch < 0 || (ch > 0 && ch < 2)) sc.fail("characteristic must be 0 or a prime");
        } else if (sc.peek_ident("weights")) {
            (void)sc.ident();
            sc.skip();
            while (std::isdigit((unsigned char)sc.peek()) || sc.peek() == '-') {
                long w = sc.integer();
                if (w < 1 || w > 1000) sc.fail("weights must be positive");
                weights.push_back((int)w);
                sc.skip();
            }
            if (weights.size() != vars.size()) sc.fail("need one weight per variable");
        } else {
            break;
        }
    }
    if (ch >= 0) {
        if (p > 0 && ch != p) sc.fail("field '" + field + "' conflicts with char " + std::to_string(ch));
        if (p == 0 && ch != 0) sc.fail("field Q conflicts with char " + std::to_string(ch));
        p = ch;
    }
    if (p < 0) p = 0;  // bare k defaults to characteristic zero
    if (p > 0) {
        for (long d = 2; d * d <= p; d++)
            if (p % d == 0) sc.fail(std::to_string(p) + " is not prime");
        if (p >= (1L << 31)) sc.fail("characteristic too large");
    }

    auto B = BaseRing::make(vars, (uint32_t)p, weights);
    std::vector<Poly> defs;
    for (const auto& raw : raw_defs) {
        try {
            defs.push_back(B->parse(raw));
        } catch (const error& e) {
            sc.fail(std::string(e.what()) + " in '" + raw + "'");
        }
    }
    try {
        s.ring = QuotRing::make(B, defs, s.ring_name);
    } catch (const error& e) {
        sc.fail(e.what());
    }
}

void parse_module_stmt(Scanner& sc, SessionInput& s) {
    if (!s.ring) sc.fail("declare a ring before modules");
    std::string name = sc.ident();
    check_fresh(sc, s, name);
    sc.expect('=');
    const BaseRing* B = s.ring->base.get();
    sc.skip();
    int l = sc.line, c = sc.col;

    if (sc.peek_ident("free")) {
        (void)sc.ident();
        std::vector<int> degs;
        sc.skip();
        while (std::isdigit((unsigned char)sc.peek()) || sc.peek() == '-') {
            degs.push_back((int)sc.integer());
            sc.skip();
        }
        s.modules.emplace_back(name, free_module(s.ring, degs));
        sc.expect(';');
        return;
    }

    if (!sc.peek_ident("coker")) sc.fail("expected 'coker' or 'free'");
    (void)sc.ident();
    sc.expect('[');
    std::vector<std::vector<Poly>> rows;
    do {
        sc.expect('[');
        std::vector<Poly> row;
        sc.skip();
        if (sc.peek() != ']') {
            do {
                row.push_back(parse_entry(sc, B));
            } while (sc.eat(','));
        }
        sc.expect(']');
        if (!rows.empty() && row.size() != rows[0].size()) sc.fail("ragged matrix rows");
        rows.push_back(std::move(row));
    } while (sc.eat(','));
    sc.expect(']');

    std::vector<int> degs;
    if (sc.peek_ident("degrees")) {
        (void)sc.ident();
        sc.skip();
        while (std::isdigit((unsigned char)sc.peek()) || sc.peek() == '-') {
            degs.push_back((int)sc.integer());
            sc.skip();
        }
        if (degs.size() != rows.size()) sc.fail("need one degree per generator (matrix row)");
    } else if (rows[0].empty()) {
        degs.assign(rows.size(), 0);
    } else {
        degs = infer_degrees(sc, l, c, rows);
    }

    std::vector<Vec> rels;
    for (size_t j = 0; j < rows[0].size(); j++) {
        Vec col = vec_zero(B, rows.size());
        for (size_t r = 0; r < rows.size(); r++) col[r] = rows[r][j];
        rels.push_back(std::move(col));
    }
    try {
        s.modules.emplace_back(name, make_module(s.ring, degs, rels));
    } catch (const error& e) {
        sc.fail_at(l, c, e.what());
    }
    sc.expect(';');
}

void parse_prime_stmt(Scanner& sc, SessionInput& s) {
    if (!s.ring) sc.fail("declare a ring before primes");
    std::string name = sc.ident();
    check_fresh(sc, s, name);
    sc.expect('=');
    sc.skip();
    int l = sc.line, c = sc.col;
    sc.expect('(');
    std::vector<Poly> gens;
    do {
        gens.push_back(parse_entry(sc, s.ring->base.get()));
    } while (sc.eat(','));
    sc.expect(')');
    try {
        s.primes.emplace_back(name, make_prime(s.ring, gens));
    } catch (const error& e) {
        sc.fail_at(l, c, e.what());
    }
    sc.expect(';');
}

}  // namespace

SessionInput parse_session(const std::string& text) {
    Scanner sc{text};
    SessionInput s;
    while (true) {
        sc.skip();
        if (sc.done()) break;
        std::string kw = sc.ident();
        if (kw == "ring") {
            parse_ring_stmt(sc, s);
            sc.expect(';');
        } else if (kw == "module") {
            parse_module_stmt(sc, s);
        } else if (kw == "prime") {
            parse_prime_stmt(sc, s);
        } else {
            sc.fail("unknown statement '" + kw + "' (expected ring, module, or prime)");
        }
    }
    if (!s.ring) throw error("session declares no ring");
    return s;
}

}  // namespace nflocus
