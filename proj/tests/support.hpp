#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdtc/cli.hpp"
#include "tdtc/lattice.hpp"
#include "tdtc/parser.hpp"

namespace tdtc::testing {

inline std::string data_path(const std::string& rel) {
    return std::string(TDTC_TEST_DATA_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& rel) {
    std::ifstream in(data_path(rel), std::ios::binary);
    if (!in) throw std::runtime_error("cannot open test data file " + rel);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline ParseResult parse_file(const std::string& rel, const ParseOptions& opts = {}) {
    return parse_source(read_file(rel), opts, rel);
}

inline std::string diag_dump(const std::vector<Diagnostic>& diags) {
    std::string out;
    for (const auto& d : diags) out += format_diagnostic(d) + "\n";
    return out;
}

// Parses and builds a fixture, throwing with the diagnostics on failure.
inline TypeGraph build_file(const std::string& rel, const ParseOptions& popts = {},
                            const BuildOptions& bopts = {}) {
    ParseResult pr = parse_file(rel, popts);
    if (!pr.ok()) throw std::runtime_error("parse failed:\n" + diag_dump(pr.diagnostics));
    BuildResult br = build_graph(pr.decls, bopts);
    if (!br.ok()) throw std::runtime_error("build failed:\n" + diag_dump(br.diagnostics));
    return std::move(*br.graph);
}

inline TypeGraph build_source(const std::string& source, const ParseOptions& popts = {},
                              const BuildOptions& bopts = {}) {
    ParseResult pr = parse_source(source, popts, "<test>");
    if (!pr.ok()) throw std::runtime_error("parse failed:\n" + diag_dump(pr.diagnostics));
    BuildResult br = build_graph(pr.decls, bopts);
    if (!br.ok()) throw std::runtime_error("build failed:\n" + diag_dump(br.diagnostics));
    return std::move(*br.graph);
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = tdtc::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// --- random lattice generator + independent reachability oracle -------------

// A randomly shaped DAG of immediate-supertype edges. Chosen parents are
// pairwise incomparable so every edge really is immediate (the registry
// rejects redundant edges).
struct RandomLattice {
    std::vector<std::string> names;
    std::vector<std::vector<int>> parents;
};

inline RandomLattice make_random_lattice(std::mt19937& rng, int max_types,
                                         int max_parents) {
    std::uniform_int_distribution<int> size_dist(1, max_types);
    const int n = size_dist(rng);
    RandomLattice lat;
    lat.parents.resize(n);

    // reach[i][j]: j is a proper supertype of i (maintained incrementally
    // during generation; the oracle recomputes independently).
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        lat.names.push_back("T" + std::to_string(i));
        if (i == 0) continue;
        std::uniform_int_distribution<int> count_dist(0, max_parents);
        int want = count_dist(rng);
        std::vector<int> candidates(i);
        for (int j = 0; j < i; ++j) candidates[j] = j;
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (int cand : candidates) {
            if (static_cast<int>(lat.parents[i].size()) >= want) break;
            bool comparable = false;
            for (int chosen : lat.parents[i])
                if (reach[chosen][cand] || reach[cand][chosen] || chosen == cand)
                    comparable = true;
            if (comparable) continue;
            lat.parents[i].push_back(cand);
        }
        for (int p : lat.parents[i]) {
            reach[i][p] = true;
            for (int j = 0; j < n; ++j)
                if (reach[p][j]) reach[i][j] = true;
        }
    }
    return lat;
}

inline std::vector<Declaration> lattice_decls(const RandomLattice& lat) {
    std::vector<Declaration> decls;
    for (size_t i = 0; i < lat.names.size(); ++i) {
        TypeDef def;
        def.name = lat.names[i];
        for (int p : lat.parents[i]) def.supertypes.push_back(lat.names[p]);
        decls.push_back(TypeDecl{std::move(def), Span{1, 1, 0}, "<random>"});
    }
    return decls;
}

// Independent reachability oracle: Floyd-Warshall over the immediate-edge
// adjacency matrix. reach[i][j] == true iff j is reachable from i.
inline std::vector<std::vector<bool>> warshall_closure(const RandomLattice& lat) {
    const int n = static_cast<int>(lat.names.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int p : lat.parents[i]) reach[i][p] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

// --- generators for the print/parse round-trip property ----------------------

inline const char* pick(std::mt19937& rng, std::initializer_list<const char*> xs) {
    std::uniform_int_distribution<size_t> d(0, xs.size() - 1);
    return *(xs.begin() + d(rng));
}

inline int roll(std::mt19937& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

inline TypeRef random_type_ref(std::mt19937& rng, int depth = 0) {
    const int top = depth >= 2 ? 6 : 8;
    switch (roll(rng, 0, top)) {
        case 0: return TypeRef::builtin(BuiltIn::Integer);
        case 1: return TypeRef::builtin(BuiltIn::Char);
        case 2: return TypeRef::declared(pick(rng, {"T0", "T1", "S#", "P_2", "QTY"}));
        case 3: return TypeRef::alpha();
        case 4: return TypeRef::omega();
        case 5: return TypeRef::null();
        case 6: return TypeRef::builtin(BuiltIn::Rational);
        default: {
            std::vector<Attribute> attrs;
            const int n = roll(rng, 0, 3);
            const char* names[] = {"A", "B", "C", "D"};
            for (int i = 0; i < n; ++i)
                attrs.push_back({names[i], random_type_ref(rng, depth + 1)});
            Heading h(std::move(attrs));
            return roll(rng, 0, 1) ? TypeRef::tuple(std::move(h))
                                   : TypeRef::relation(std::move(h));
        }
    }
}

inline PossrepDef random_possrep(std::mt19937& rng) {
    PossrepDef p;
    if (roll(rng, 0, 1)) p.name = pick(rng, {"CARTESIAN", "POLAR", "REP1"});
    const bool derived = roll(rng, 0, 2) == 0;
    const int n = roll(rng, derived ? 1 : 0, 3);
    const char* names[] = {"X", "Y", "Z", "W"};
    for (int i = 0; i < n; ++i) {
        if (derived)
            p.derived.push_back(
                {names[i], pick(rng, {"THE_A (T0)", "THE_B (T1) + 1",
                                      "MAX (A, B)", "F (G (X))"})});
        else
            p.components.push_back({names[i], random_type_ref(rng, 1)});
    }
    if (!derived && roll(rng, 0, 2) == 0)
        p.constraint = pick(rng, {"A >= B", "LEN (X) > 0", "THE_A (T0) = 4"});
    return p;
}

inline TypeDef random_type_def(std::mt19937& rng, int serial) {
    TypeDef def;
    def.name = "G" + std::to_string(serial);
    def.ordinal = roll(rng, 0, 3) == 0;
    def.union_flag = roll(rng, 0, 1) == 0;
    const int supers = roll(rng, 0, 2);
    const char* pool[] = {"T0", "T1", "T2", "S#"};
    for (int i = 0; i < supers; ++i) def.supertypes.push_back(pool[i]);
    const int possreps = roll(rng, 0, 2);
    for (int i = 0; i < possreps; ++i) {
        PossrepDef p = random_possrep(rng);
        (p.is_derived() ? def.derived_possreps : def.possreps).push_back(std::move(p));
    }
    if (!def.supertypes.empty() && roll(rng, 0, 1))
        def.additional_constraint = "THE_A (T0) = THE_B (T0)";
    return def;
}

// Scalar values whose display re-parses: selectors, numbers, quoted text,
// TRUE/FALSE.
inline Value random_scalar_value(std::mt19937& rng) {
    switch (roll(rng, 0, 4)) {
        case 0:
            return Value::scalar(TypeRef::declared(pick(rng, {"S#", "NAME", "T0"})),
                                 std::string("(") + pick(rng, {"'S1'", "'x y'", "7"}) +
                                     ")");
        case 1: return Value::scalar(TypeRef::builtin(BuiltIn::Integer),
                                     std::to_string(roll(rng, 0, 999)));
        case 2: return Value::scalar(TypeRef::builtin(BuiltIn::Char),
                                     std::string("'") + pick(rng, {"London", "Paris"}) +
                                         "'");
        case 3: return Value::scalar(TypeRef::builtin(BuiltIn::Boolean),
                                     pick(rng, {"TRUE", "FALSE"}));
        default: return Value::scalar(TypeRef::builtin(BuiltIn::Rational),
                                      std::to_string(roll(rng, 0, 99)) + "." +
                                          std::to_string(roll(rng, 0, 99)));
    }
}

inline Value random_value(std::mt19937& rng, int depth = 0) {
    const int top = depth >= 2 ? 1 : 3;
    switch (roll(rng, 0, top)) {
        case 0: return random_scalar_value(rng);
        case 1: return Value::null_marker();
        case 2: {
            std::vector<TupleTriplet> ts;
            const int n = roll(rng, 0, 3);
            const char* names[] = {"A", "B", "C", "D"};
            for (int i = 0; i < n; ++i) {
                Value v = random_value(rng, depth + 1);
                ts.push_back({names[i], declared_type_of(v), std::move(v)});
            }
            return Value::tuple(std::move(ts));
        }
        default: {
            const int degree = roll(rng, 0, 2);
            const char* names[] = {"A", "B"};
            std::vector<Attribute> attrs;
            for (int i = 0; i < degree; ++i)
                attrs.push_back({names[i], random_type_ref(rng, 2)});
            Heading h(attrs);
            std::vector<Value> body;
            const int rows = roll(rng, 0, 2);
            for (int r = 0; r < rows; ++r) {
                std::vector<TupleTriplet> ts;
                for (int i = 0; i < degree; ++i) {
                    Value v = random_value(rng, depth + 2);
                    ts.push_back({names[i], declared_type_of(v), std::move(v)});
                }
                body.push_back(Value::tuple(std::move(ts)));
            }
            return Value::relation(std::move(h), std::move(body));
        }
    }
}

} // namespace tdtc::testing
