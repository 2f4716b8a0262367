// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// criteria hold. Run directly or through ctest.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "tdtc/cli.hpp"
#include "tdtc/nonscalar.hpp"
#include "tdtc/parser.hpp"
#include "tdtc/printer.hpp"
#include "tdtc/values.hpp"

using namespace tdtc;
using namespace tdtc::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    std::string label;
    std::function<void(std::vector<std::string>&)> run;
    double time_limit_s = 0.0;  // 0 = untimed
};

void expect(std::vector<std::string>& failures, bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
}

TypeRef T(const char* name) { return TypeRef::declared(name); }

TypeRef rel2(const char* a, TypeRef ta, const char* b, TypeRef tb) {
    return TypeRef::relation(Heading({{a, std::move(ta)}, {b, std::move(tb)}}));
}

TypeRef tup2(const char* a, TypeRef ta, const char* b, TypeRef tb) {
    return TypeRef::tuple(Heading({{a, std::move(ta)}, {b, std::move(tb)}}));
}

// 1. Golden-parse corpus: all 16 listings parse in lenient mode and
//    round-trip through pretty-printing.
void criterion_corpus(std::vector<std::string>& failures) {
    for (int i = 1; i <= 16; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "corpus/listing%02d.tdd", i);
        ParseResult first = parse_file(name);
        if (!first.ok()) {
            failures.push_back(std::string(name) + " failed to parse:\n" +
                               diag_dump(first.diagnostics));
            continue;
        }
        ParseResult second = parse_source(print_program(first.decls));
        if (!second.ok()) {
            failures.push_back(std::string(name) + " pretty-print does not re-parse");
            continue;
        }
        if (first.decls.size() != second.decls.size()) {
            failures.push_back(std::string(name) + " round-trip changed the count");
            continue;
        }
        for (size_t k = 0; k < first.decls.size(); ++k)
            expect(failures, declarations_equal(first.decls[k], second.decls[k]),
                   std::string(name) + " declaration " + std::to_string(k) +
                       " changed across the round-trip");
    }
}

// 2. On 1000 random DAGs, is_subtype matches a brute-force transitive
//    closure on every ordered pair, and the partial-order laws hold.
void criterion_lattice_oracle(std::vector<std::string>& failures) {
    std::mt19937 rng(424242);
    for (int round = 0; round < 1000; ++round) {
        RandomLattice lat = make_random_lattice(rng, 12, 3);
        auto reach = warshall_closure(lat);
        BuildResult br = build_graph(lattice_decls(lat));
        if (!br.ok()) {
            failures.push_back("random graph " + std::to_string(round) +
                               " failed to build:\n" + diag_dump(br.diagnostics));
            return;
        }
        const TypeGraph& g = *br.graph;
        const int n = static_cast<int>(lat.names.size());
        std::vector<TypeRef> refs;
        for (const auto& nm : lat.names) refs.push_back(TypeRef::declared(nm));

        std::vector<std::vector<bool>> got(n, std::vector<bool>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                got[i][j] = g.is_subtype(refs[i], refs[j]);
                const bool expected = i == j || reach[i][j];
                if (got[i][j] != expected) {
                    failures.push_back("graph " + std::to_string(round) + ": " +
                                       lat.names[i] + " <= " + lat.names[j] +
                                       " disagrees with the oracle");
                    return;
                }
            }
        for (int i = 0; i < n; ++i) {
            if (!got[i][i]) {
                failures.push_back("reflexivity violated");
                return;
            }
            for (int j = 0; j < n; ++j) {
                if (i != j && got[i][j] && got[j][i]) {
                    failures.push_back("antisymmetry violated");
                    return;
                }
                for (int k = 0; k < n; ++k)
                    if (got[i][j] && got[j][k] && !got[i][k]) {
                        failures.push_back("transitivity violated");
                        return;
                    }
            }
        }
    }
}

// 3. Exact lattice facts from the worked examples.
void criterion_paper_facts(std::vector<std::string>& failures) {
    TypeGraph g = build_file("fixtures/figures.tdd");
    expect(failures, g.is_subtype(T("CIRCLE"), T("ELLIPSE")),
           "CIRCLE <= ELLIPSE expected");
    std::set<TypeRef> expected_supers = {T("RECTANGLE"), T("RHOMBUS")};
    expect(failures, g.immediate_supertypes(T("SQUARE")) == expected_supers,
           "immediate supertypes of SQUARE should be {RECTANGLE, RHOMBUS}");
    expect(failures,
           ns_is_subtype(rel2("E", T("CIRCLE"), "R", T("SQUARE")),
                         rel2("E", T("ELLIPSE"), "R", T("RECTANGLE")), g),
           "RELATION CS <= RELATION ER expected");

    const TypeRef er = tup2("E", T("ELLIPSE"), "R", T("RECTANGLE"));
    const TypeRef cr = tup2("E", T("CIRCLE"), "R", T("RECTANGLE"));
    const TypeRef es = tup2("E", T("ELLIPSE"), "R", T("SQUARE"));
    const TypeRef cs = tup2("E", T("CIRCLE"), "R", T("SQUARE"));
    struct Fact {
        const TypeRef* a;
        const TypeRef* b;
        bool le;
        const char* what;
    };
    const Fact facts[] = {
        {&er, &er, true, "ER <= ER"},   {&er, &cr, false, "ER <= CR"},
        {&er, &es, false, "ER <= ES"},  {&er, &cs, false, "ER <= CS"},
        {&cr, &er, true, "CR <= ER"},   {&cr, &cr, true, "CR <= CR"},
        {&cr, &es, false, "CR <= ES"},  {&cr, &cs, false, "CR <= CS"},
        {&es, &er, true, "ES <= ER"},   {&es, &cr, false, "ES <= CR"},
        {&es, &es, true, "ES <= ES"},   {&es, &cs, false, "ES <= CS"},
        {&cs, &er, true, "CS <= ER"},   {&cs, &cr, true, "CS <= CR"},
        {&cs, &es, true, "CS <= ES"},   {&cs, &cs, true, "CS <= CS"},
    };
    for (const Fact& f : facts)
        expect(failures, ns_is_subtype(*f.a, *f.b, g) == f.le,
               std::string("diamond pair ") + f.what + " should be " +
                   (f.le ? "true" : "false"));
}

// 4. Union arity rule.
void criterion_union_arity(std::vector<std::string>& failures) {
    ParseResult pr = parse_file("fixtures/union_one_subtype.tdd");
    expect(failures, pr.ok(), "arity fixture should parse");
    BuildResult br = build_graph(pr.decls);
    expect(failures, !br.ok(), "a union with one immediate subtype must be rejected");
    expect(failures,
           diag_dump(br.diagnostics)
                   .find("union type 'ELLIPSE' requires at least 2 immediate "
                         "subtypes (found 1)") != std::string::npos,
           "the specific arity diagnostic must be emitted");

    ParseResult ok = parse_file("fixtures/ellipse_family.tdd");
    BuildResult family = build_graph(ok.decls);
    expect(failures, family.ok(),
           "the ELLIPSE/CIRCLE/NONCIRCLE family must be accepted");
    if (family.ok()) {
        std::set<TypeRef> subs = {T("CIRCLE"), T("NONCIRCLE")};
        expect(failures, family.graph->immediate_subtypes(T("ELLIPSE")) == subs,
               "ELLIPSE must have exactly the two declared immediate subtypes");
    }
}

// 5. Alpha/omega closure and non-definability.
void criterion_alpha_omega(std::vector<std::string>& failures) {
    TypeGraph g = build_file("fixtures/figures.tdd");
    for (const std::string& n : g.declared_names()) {
        const TypeRef t = TypeRef::declared(n);
        expect(failures, g.is_subtype(TypeRef::omega(), t), "omega <= " + n);
        expect(failures, g.is_subtype(t, TypeRef::alpha()), n + " <= alpha");
    }
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        RandomLattice lat = make_random_lattice(rng, 12, 3);
        BuildResult br = build_graph(lattice_decls(lat));
        if (!br.ok()) continue;
        for (const std::string& n : br.graph->declared_names()) {
            const TypeRef t = TypeRef::declared(n);
            expect(failures, br.graph->is_subtype(TypeRef::omega(), t),
                   "random graph: omega <= " + n);
            expect(failures, br.graph->is_subtype(t, TypeRef::alpha()),
                   "random graph: " + n + " <= alpha");
        }
    }

    for (const char* file : {"fixtures/alpha_decl.tdd", "fixtures/omega_decl.tdd"}) {
        ParseResult pr = parse_file(file);
        expect(failures, pr.ok(), std::string(file) + " should parse");
        expect(failures, !build_graph(pr.decls).ok(),
               std::string(file) + " must be rejected by validation");
    }
}

// 6. Maximal/minimal equations and the degree-0 value enumerations.
void criterion_maximal_minimal(std::vector<std::string>& failures) {
    expect(failures,
           maximal_type(rel2("E", T("ELLIPSE"), "R", T("RECTANGLE"))) ==
               rel2("E", TypeRef::alpha(), "R", TypeRef::alpha()),
           "maximal of RELATION {E ELLIPSE, R RECTANGLE} is RELATION {E alpha, R alpha}");
    expect(failures, minimal_type(TypeRef::tuple(Heading{})) == TypeRef::tuple(Heading{}),
           "TUPLE {} is its own minimal type");
    expect(failures,
           minimal_type(TypeRef::relation(Heading{})) == TypeRef::relation(Heading{}),
           "RELATION {} is its own minimal type");

    // The degree-0 relation type admits exactly TABLE_DEE and TABLE_DUM.
    std::set<Value> degree0_relations;
    degree0_relations.insert(Value::relation(Heading{}, {}));
    degree0_relations.insert(Value::relation(Heading{}, {zero_tuple()}));
    degree0_relations.insert(Value::relation(Heading{}, {zero_tuple(), zero_tuple()}));
    expect(failures, degree0_relations.size() == 2,
           "exactly two distinct degree-0 relation values");
    expect(failures, degree0_relations.count(table_dee()) == 1, "TABLE_DEE admitted");
    expect(failures, degree0_relations.count(table_dum()) == 1, "TABLE_DUM admitted");

    // The degree-0 tuple type admits exactly the 0-tuple.
    std::set<Value> degree0_tuples;
    degree0_tuples.insert(Value::tuple({}));
    degree0_tuples.insert(zero_tuple());
    expect(failures, degree0_tuples.size() == 1,
           "exactly one degree-0 tuple value (the 0-tuple)");
}

// 7. Classification output reproduces every output label of the algorithm,
//    and plain mode enforces its restrictions.
void criterion_branch_labels(std::vector<std::string>& failures) {
    CliResult inh = run_cli({"check", data_path("fixtures/branch_labels.tdd")});
    expect(failures, inh.code == cli::kExitOk, "branch label fixture must check clean");
    for (const char* label :
         {"COLOR: root scalar type", "CIRCLE: nonroot scalar type",
          "FIGURE: root scalar type (dummy)",
          "POLYGON: nonroot scalar type (dummy)",
          "ELLIPSE: nonroot scalar type (regular union)",
          "TEMPERATURE: root scalar type (ordinal)",
          "DEGENERATE: root nonscalar type (tuple)",
          "POINTS: nonroot nonscalar type (relation)",
          "COUNT: built-in scalar type (INTEGER)", "MISSING: null type (#)"})
        expect(failures, inh.out.find(label) != std::string::npos,
               std::string("missing label: ") + label);

    CliResult plain =
        run_cli({"check", "--mode=plain", data_path("fixtures/plain_labels.tdd")});
    expect(failures, plain.code == cli::kExitOk, "plain fixture must check clean");
    for (const char* label :
         {"POINT: scalar type", "ADDR: tuple type", "S: relation type"})
        expect(failures, plain.out.find(label) != std::string::npos,
               std::string("missing plain label: ") + label);

    expect(failures,
           run_cli({"check", "--mode=plain", data_path("fixtures/plain_union.tdd")})
                   .code == cli::kExitValidation,
           "plain mode must reject UNION declarations");
    expect(failures,
           run_cli({"check", "--mode=plain",
                    data_path("fixtures/plain_no_possrep.tdd")})
                   .code == cli::kExitValidation,
           "plain mode must reject possrep-less user scalar types");
}

// 8. The null type '#'.
void criterion_null_type(std::vector<std::string>& failures) {
    TypeRefParse p = parse_type_ref_text("#");
    expect(failures, p.ok() && p.ref->kind() == TypeRef::Kind::Null,
           "'#' must parse as a type reference");

    TypeGraph g = build_file("fixtures/figures.tdd");
    Value with_null = Value::tuple({{"E", TypeRef::null(), Value::null_marker()}});
    expect(failures, conforms(with_null, Heading({{"E", TypeRef::null()}}), g),
           "the null marker conforms to '#'");
    expect(failures, !conforms(with_null, Heading({{"E", T("ELLIPSE")}}), g),
           "the null marker must not conform to ELLIPSE by default");
    ConformsOptions widen;
    widen.null_conforms_all = true;
    expect(failures, conforms(with_null, Heading({{"E", T("ELLIPSE")}}), g, widen),
           "the null marker conforms to any type under the widening flag");

    // '#' never appears in a true subtype result against a declared type.
    std::vector<TypeRef> others;
    for (const std::string& n : g.declared_names()) others.push_back(T(n.c_str()));
    for (BuiltIn b : {BuiltIn::Integer, BuiltIn::Rational, BuiltIn::Character,
                      BuiltIn::Char, BuiltIn::Boolean})
        others.push_back(TypeRef::builtin(b));
    others.push_back(TypeRef::alpha());
    others.push_back(TypeRef::omega());
    for (const TypeRef& t : others) {
        expect(failures, !subtype_query(TypeRef::null(), t, g),
               "# <= " + t.display() + " must be false");
        expect(failures, !subtype_query(t, TypeRef::null(), g),
               t.display() + " <= # must be false");
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"golden corpus parses and round-trips", criterion_corpus, 1.0},
        {"is_subtype matches the closure oracle on 1000 random DAGs",
         criterion_lattice_oracle, 10.0},
        {"paper lattice facts hold exactly", criterion_paper_facts, 0.0},
        {"union arity rule enforced", criterion_union_arity, 0.0},
        {"alpha/omega closure and non-definability", criterion_alpha_omega, 0.0},
        {"maximal/minimal equations and degree-0 enumerations",
         criterion_maximal_minimal, 0.0},
        {"classification covers every output label", criterion_branch_labels, 0.0},
        {"null type behaviour", criterion_null_type, 0.0},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::vector<std::string> failures;
        const auto start = Clock::now();
        try {
            criteria[i].run(failures);
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(Clock::now() - start).count();
        if (criteria[i].time_limit_s > 0 && elapsed > criteria[i].time_limit_s)
            failures.push_back("time limit exceeded: " + std::to_string(elapsed) +
                               "s > " + std::to_string(criteria[i].time_limit_s) + "s");
        char line[256];
        std::snprintf(line, sizeof line, "%s  %zu. %s (%.2fs)",
                      failures.empty() ? "PASS" : "FAIL", i + 1,
                      criteria[i].label.c_str(), elapsed);
        std::cout << line << "\n";
        for (const std::string& f : failures) std::cout << "      - " << f << "\n";
        if (!failures.empty()) ++failed;
    }
    if (failed) {
        std::cout << failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
