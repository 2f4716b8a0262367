#include "tdtc/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdtc/lattice.hpp"
#include "tdtc/nonscalar.hpp"
#include "tdtc/parser.hpp"
#include "tdtc/printer.hpp"
#include "tdtc/values.hpp"

namespace tdtc::cli {

namespace {

struct CommonOpts {
    std::string mode = "inheritance";
    bool strict = false;
    bool assume_declared = false;
    bool null_conforms_all = false;
    std::string color = "auto";
    std::vector<std::string> files;
    std::string single_file;

    Mode mode_enum() const {
        return mode == "plain" ? Mode::Plain : Mode::Inheritance;
    }
    ParseOptions parse_options() const {
        ParseOptions p;
        p.mode = mode_enum();
        p.strict = strict;
        return p;
    }
    BuildOptions build_options() const {
        BuildOptions b;
        b.mode = mode_enum();
        b.assume_declared = assume_declared;
        return b;
    }
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool many_files) {
    cmd->add_option("--mode", o.mode, "Type system mode")
        ->check(CLI::IsMember({"inheritance", "plain"}))
        ->capture_default_str();
    cmd->add_flag("--strict", o.strict, "Enforce the inheritance grammar literally");
    cmd->add_flag("--assume-declared", o.assume_declared,
                  "Synthesize stubs for referenced but undeclared type names");
    cmd->add_flag("--null-conforms-all", o.null_conforms_all,
                  "Let the null marker conform to any attribute type");
    cmd->add_option("--color", o.color, "Color diagnostics")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
    if (many_files)
        cmd->add_option("files", o.files, "Input .tdd files")->required();
    else
        cmd->add_option("file", o.single_file, "Input .tdd file")->required();
}

void print_diags(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const Diagnostic& d : diags) err << format_diagnostic(d) << "\n";
}

struct Loaded {
    std::vector<Declaration> decls;
    std::optional<TypeGraph> graph;
    int exit_code = kExitOk;
};

// parse every file -> one combined declaration space -> build_graph
Loaded load(const CommonOpts& o, std::ostream& err) {
    Loaded result;
    std::vector<Diagnostic> diags;
    std::vector<std::string> files = o.files;
    if (!o.single_file.empty()) files.push_back(o.single_file);
    for (const std::string& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err << "error: cannot open file '" << path << "'\n";
            result.exit_code = kExitUsage;
            return result;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        ParseResult pr = parse_source(buf.str(), o.parse_options(), path);
        for (auto& d : pr.diagnostics) diags.push_back(std::move(d));
        for (auto& d : pr.decls) result.decls.push_back(std::move(d));
    }
    print_diags(diags, err);
    if (has_errors(diags)) {
        result.exit_code = kExitParse;
        return result;
    }
    BuildResult br = build_graph(result.decls, o.build_options());
    print_diags(br.diagnostics, err);
    if (!br.ok()) {
        result.exit_code = kExitValidation;
        return result;
    }
    result.graph = std::move(br.graph);
    return result;
}

std::string join_quals(const std::vector<std::string>& quals) {
    if (quals.empty()) return "";
    std::string out = " (";
    for (size_t i = 0; i < quals.size(); ++i) {
        if (i) out += ", ";
        out += quals[i];
    }
    return out + ")";
}

// One classification line per entity, in the vocabulary of the type
// system's output labels: root/nonroot scalar, root/nonroot nonscalar,
// dummy, built-in, the plain-mode labels, and the null type '#'.
std::string classification_of(const TypeRef& t, const TypeGraph& g, Mode mode,
                              bool show_type_name) {
    std::vector<std::string> quals;
    if (show_type_name) quals.push_back(t.display());

    if (t.kind() == TypeRef::Kind::Null) return "null type (#)";

    if (t.is_nonscalar()) {
        const bool tuple = t.kind() == TypeRef::Kind::Tuple;
        if (mode == Mode::Plain) return tuple ? "tuple type" : "relation type";
        std::string label =
            ns_immediate_supertypes(t, g).empty() ? "root nonscalar type"
                                                  : "nonroot nonscalar type";
        quals.insert(quals.begin(), tuple ? "tuple" : "relation");
        if (ns_is_dummy(t, g))
            quals.push_back("dummy");
        else if (ns_is_union(t, g))
            quals.push_back("union");
        return label + join_quals(quals);
    }

    switch (g.classify(t)) {
        case Classification::Alpha:
            quals.push_back("dummy");
            return "maximal scalar type" + join_quals(quals);
        case Classification::Omega:
            quals.push_back("dummy");
            return "minimal scalar type" + join_quals(quals);
        case Classification::BuiltIn:
            if (mode == Mode::Plain) return "scalar type" + join_quals(quals);
            return "built-in scalar type" + join_quals(quals);
        default:
            break;
    }

    if (mode == Mode::Plain) return "scalar type" + join_quals(quals);

    if (g.scalar_class(t) == ScalarClass::Dummy)
        quals.push_back("dummy");
    else if (g.scalar_class(t) == ScalarClass::RegularUnion)
        quals.push_back("regular union");
    if (g.is_ordinal(t)) quals.push_back("ordinal");
    if (g.is_stub(t)) quals.push_back("assumed");
    const std::string label =
        g.is_root(t) ? "root scalar type" : "nonroot scalar type";
    return label + join_quals(quals);
}

int cmd_check(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    Loaded loaded = load(o, err);
    if (!loaded.graph) return loaded.exit_code;
    const TypeGraph& g = *loaded.graph;
    const Mode mode = o.mode_enum();
    for (const Declaration& d : loaded.decls) {
        if (const auto* td = std::get_if<TypeDecl>(&d)) {
            const TypeRef ref = TypeRef::declared(td->def.name);
            out << td->def.name << ": " << classification_of(ref, g, mode, false)
                << "\n";
        } else if (const auto* vd = std::get_if<VarDecl>(&d)) {
            const bool named = vd->type.is_scalar();
            out << vd->name << ": " << classification_of(vd->type, g, mode, named)
                << "\n";
        }
    }
    return kExitOk;
}

std::optional<TypeRef> parse_ref_arg(const std::string& text, const CommonOpts& o,
                                     std::ostream& err) {
    TypeRefParse p = parse_type_ref_text(text, o.parse_options());
    print_diags(p.diagnostics, err);
    if (!p.ok()) return std::nullopt;
    return p.ref;
}

// Every declared scalar mentioned in the reference must resolve.
bool ref_resolves(const TypeRef& t, const TypeGraph& g, std::ostream& err) {
    if (t.kind() == TypeRef::Kind::Declared && !g.contains(t)) {
        err << "error: unknown type '" << t.name() << "'\n";
        return false;
    }
    if (t.is_nonscalar()) {
        for (const Attribute& a : t.heading().attributes())
            if (!ref_resolves(a.type, g, err)) return false;
    }
    return true;
}

int cmd_subtype(const CommonOpts& o, const std::string& name_a,
                const std::string& name_b, std::ostream& out, std::ostream& err) {
    Loaded loaded = load(o, err);
    if (!loaded.graph) return loaded.exit_code;
    auto a = parse_ref_arg(name_a, o, err);
    auto b = parse_ref_arg(name_b, o, err);
    if (!a || !b) return kExitUsage;
    if (!ref_resolves(*a, *loaded.graph, err) || !ref_resolves(*b, *loaded.graph, err))
        return kExitUsage;
    out << (subtype_query(*a, *b, *loaded.graph) ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_classify(const CommonOpts& o, const std::string& name, std::ostream& out,
                 std::ostream& err) {
    Loaded loaded = load(o, err);
    if (!loaded.graph) return loaded.exit_code;
    auto t = parse_ref_arg(name, o, err);
    if (!t) return kExitUsage;
    if (!ref_resolves(*t, *loaded.graph, err)) return kExitUsage;
    out << t->display() << ": "
        << classification_of(*t, *loaded.graph, o.mode_enum(), false) << "\n";
    return kExitOk;
}

int cmd_lattice(const CommonOpts& o, bool dot, bool closure, std::ostream& out,
                std::ostream& err) {
    Loaded loaded = load(o, err);
    if (!loaded.graph) return loaded.exit_code;
    out << (dot ? to_dot(*loaded.graph, closure) : to_text(*loaded.graph, closure));
    return kExitOk;
}

int cmd_mst(const CommonOpts& o, const std::string& literal, const std::string& tag,
            std::ostream& out, std::ostream& err) {
    Loaded loaded = load(o, err);
    if (!loaded.graph) return loaded.exit_code;

    Value value = zero_tuple();
    if (!tag.empty()) {
        auto t = parse_ref_arg(tag, o, err);
        if (!t) return kExitUsage;
        value = Value::scalar(*t, "");
    } else {
        ValueParse vp = parse_value_text(literal, o.parse_options());
        print_diags(vp.diagnostics, err);
        if (!vp.ok()) return kExitUsage;
        value = *vp.value;
    }
    try {
        out << mst(value, *loaded.graph).display() << "\n";
    } catch (const MstNotUniqueError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const UnknownTypeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValueTypingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type definition checker for the Tutorial D type system"};
    app.require_subcommand(1);

    CommonOpts check_o, subtype_o, classify_o, lattice_o, mst_o;
    std::string subtype_a, subtype_b, classify_name, mst_literal, mst_tag;
    bool lattice_dot = false, lattice_closure = false;

    CLI::App* check = app.add_subcommand(
        "check", "Parse, validate and classify every declaration");
    add_common_flags(check, check_o, true);

    CLI::App* subtype =
        app.add_subcommand("subtype", "Answer: is A a subtype of B?");
    add_common_flags(subtype, subtype_o, false);
    subtype->add_option("A", subtype_a, "Type name or TUPLE/RELATION literal")
        ->required();
    subtype->add_option("B", subtype_b, "Type name or TUPLE/RELATION literal")
        ->required();

    CLI::App* classify =
        app.add_subcommand("classify", "Print the classification of one type");
    add_common_flags(classify, classify_o, false);
    classify->add_option("NAME", classify_name, "Type name or literal")->required();

    CLI::App* lattice =
        app.add_subcommand("lattice", "Print the inheritance lattice");
    add_common_flags(lattice, lattice_o, true);
    lattice->add_flag("--dot", lattice_dot, "Emit Graphviz DOT");
    lattice->add_flag("--closure", lattice_closure,
                      "Include alpha/omega and their synthetic edges");

    CLI::App* mst_cmd = app.add_subcommand(
        "mst", "Print the most specific type of a value literal");
    add_common_flags(mst_cmd, mst_o, false);
    mst_cmd->add_option("VALUE", mst_literal, "Value literal");
    mst_cmd->add_option("--tag", mst_tag, "Scalar value with this most-specific-type tag");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (check->parsed()) return cmd_check(check_o, out, err);
    if (subtype->parsed())
        return cmd_subtype(subtype_o, subtype_a, subtype_b, out, err);
    if (classify->parsed()) return cmd_classify(classify_o, classify_name, out, err);
    if (lattice->parsed())
        return cmd_lattice(lattice_o, lattice_dot, lattice_closure, out, err);
    if (mst_cmd->parsed()) {
        if (mst_literal.empty() && mst_tag.empty()) {
            err << "usage error: mst requires a value literal or --tag\n";
            return kExitUsage;
        }
        return cmd_mst(mst_o, mst_literal, mst_tag, out, err);
    }
    return kExitUsage;
}

} // namespace tdtc::cli
