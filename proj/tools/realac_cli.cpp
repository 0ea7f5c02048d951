// realac: command-line front end for the formula/circuit toolkit.
//
// Subcommands: parse, model-check, compile, eval-circuit, normalize,
// oracle, reverse, encode, check-equiv. Exit codes: 0 success, 1 contract
// violation (single-line diagnostic on stderr), 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "realac/realac.hpp"

namespace {

using namespace realac;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Signature load_signature(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_signature(in);
}

StructureFile load_structure(const std::string& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_structure(in, sig);
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_circuit(in);
}

std::vector<Rational> parse_input_vector(const std::string& text) {
    std::vector<Rational> values;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        auto from = item.find_first_not_of(" \t");
        auto to = item.find_last_not_of(" \t");
        if (from == std::string::npos)
            fail(ErrorCode::IoError, "empty entry in input vector");
        values.push_back(parse_rational(item.substr(from, to - from + 1)));
    }
    if (values.empty()) fail(ErrorCode::IoError, "empty input vector");
    return values;
}

void print_circuit(const Circuit& C, bool dot) {
    if (dot)
        write_dot(std::cout, C);
    else
        write_circuit(std::cout, C);
}

struct CheckEquivArgs {
    std::string formula_path, sig_path;
    std::int64_t u = 1;
    std::uint64_t seed = 0;
    int count = 50;
    bool exhaustive = false;
};

int run_check_equiv(const CheckEquivArgs& args) {
    Signature sig = load_signature(args.sig_path);
    FormulaPtr f = parse_formula(read_file(args.formula_path), sig);
    bool has_aux = !sig.aux_symbols().empty();

    Circuit fixed;
    if (!has_aux) fixed = eliminate_aux_gates(compile(f, sig, args.u));

    std::vector<StructureFile> batch;
    if (args.exhaustive) {
        std::uint64_t total = count_binary_structures(sig, args.u, 4096);
        if (total <= 4096) {
            for (std::uint64_t i = 0; i < total; ++i)
                batch.push_back(binary_structure(sig, args.u, i));
        } else {
            std::mt19937_64 rng(args.seed);
            for (int i = 0; i < 200; ++i) batch.push_back(random_structure(sig, args.u, rng));
        }
    } else {
        std::mt19937_64 rng(args.seed);
        for (int i = 0; i < args.count; ++i)
            batch.push_back(random_structure(sig, args.u, rng));
    }

    int agree = 0;
    for (const StructureFile& sf : batch) {
        bool sat = satisfies(f, sf.structure, sf.arb);
        const Circuit& C =
            has_aux ? (fixed = eliminate_aux_gates(compile(f, sig, args.u, sf.arb)), fixed)
                    : fixed;
        std::vector<Rational> out = evaluate(C, encode(sf.structure));
        if ((out.at(0) == Rational(1)) == sat) ++agree;
    }
    std::cout << agree << "/" << batch.size() << " agree\n";
    return agree == static_cast<int>(batch.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"formula/circuit compiler toolkit"};
    app.require_subcommand(1);

    std::string formula_path, sig_path, structure_path, circuit_path, inputs_text;
    std::int64_t u = 1, n = 0, gate = 0, pred = 1;
    bool numbered = false, emit_dot = false;
    bool pass_no_aux = false, pass_tree_like = false, pass_level = false;

    int rc = 0;

    auto* cmd_parse = app.add_subcommand("parse", "parse a formula and echo its canonical form");
    cmd_parse->add_option("--formula", formula_path, "formula file")->required();
    cmd_parse->add_option("--sig", sig_path, "signature file")->required();
    cmd_parse->callback([&] {
        Signature sig = load_signature(sig_path);
        std::cout << print_formula(parse_formula(read_file(formula_path), sig)) << "\n";
    });

    auto* cmd_mc = app.add_subcommand("model-check", "evaluate a sentence on a structure");
    cmd_mc->add_option("--formula", formula_path, "formula file")->required();
    cmd_mc->add_option("--sig", sig_path, "signature file")->required();
    cmd_mc->add_option("--structure", structure_path, "structure file")->required();
    cmd_mc->callback([&] {
        Signature sig = load_signature(sig_path);
        FormulaPtr f = parse_formula(read_file(formula_path), sig);
        StructureFile sf = load_structure(structure_path, sig);
        std::cout << (satisfies(f, sf.structure, sf.arb) ? "true" : "false") << "\n";
    });

    auto* cmd_compile = app.add_subcommand("compile", "compile a sentence into a circuit");
    cmd_compile->add_option("--formula", formula_path, "formula file")->required();
    cmd_compile->add_option("--sig", sig_path, "signature file")->required();
    cmd_compile->add_option("--u", u, "universe size")->required()->check(CLI::PositiveNumber);
    cmd_compile->add_option("--structure", structure_path,
                            "structure file supplying [arb] tables, if the formula needs them");
    cmd_compile->add_flag("--numbered", numbered, "keep the sparse gate numbering");
    cmd_compile->add_flag("--emit-dot", emit_dot, "print DOT instead of circuit text");
    cmd_compile->callback([&] {
        Signature sig = load_signature(sig_path);
        FormulaPtr f = parse_formula(read_file(formula_path), sig);
        ArbInterpretation arb;
        if (!structure_path.empty()) arb = load_structure(structure_path, sig).arb;
        Circuit C = numbered ? compile_numbered(f, sig, u, arb) : compile(f, sig, u, arb);
        print_circuit(C, emit_dot);
    });

    auto* cmd_eval = app.add_subcommand("eval-circuit", "evaluate a circuit on an input vector");
    cmd_eval->add_option("--circuit", circuit_path, "circuit file")->required();
    cmd_eval->add_option("--inputs", inputs_text, "comma-separated rational inputs")->required();
    cmd_eval->callback([&] {
        Circuit C = load_circuit(circuit_path);
        std::vector<Rational> out = evaluate(C, parse_input_vector(inputs_text));
        for (std::size_t i = 0; i < out.size(); ++i)
            std::cout << (i ? " " : "") << to_string(out[i]);
        std::cout << "\n";
    });

    auto* cmd_norm = app.add_subcommand("normalize", "run normalization passes on a circuit");
    cmd_norm->add_option("--circuit", circuit_path, "circuit file")->required();
    cmd_norm->add_flag("--no-aux", pass_no_aux, "lower comparison and subtraction gates");
    cmd_norm->add_flag("--tree-like", pass_tree_like, "duplicate shared interior gates");
    cmd_norm->add_flag("--level", pass_level, "pad input paths to a common length");
    cmd_norm->add_flag("--emit-dot", emit_dot, "print DOT instead of circuit text");
    cmd_norm->callback([&] {
        Circuit C = load_circuit(circuit_path);
        if (pass_no_aux) C = eliminate_aux_gates(C);
        if (pass_tree_like) C = make_tree_like(C);
        if (pass_level) C = level_paths(C);
        print_circuit(C, emit_dot);
    });

    auto* cmd_oracle = app.add_subcommand("oracle", "answer one direct-access gate query");
    cmd_oracle->add_option("--formula", formula_path, "formula file")->required();
    cmd_oracle->add_option("--sig", sig_path, "signature file")->required();
    cmd_oracle->add_option("--n", n, "input length")->required();
    cmd_oracle->add_option("--gate", gate, "gate number")->required();
    cmd_oracle->add_option("--pred", pred, "predecessor index, 1-based");
    cmd_oracle->callback([&] {
        Signature sig = load_signature(sig_path);
        FormulaPtr f = parse_formula(read_file(formula_path), sig);
        GateRecord r = gate_oracle(f, sig, n, gate, pred);
        std::cout << r.t << " " << r.p_nr << " " << to_string(r.c) << "\n";
    });

    auto* cmd_reverse = app.add_subcommand("reverse", "describe a circuit as a sentence");
    cmd_reverse->add_option("--circuit", circuit_path, "circuit file")->required();
    cmd_reverse->add_option("--u", u, "universe size")->required()->check(CLI::PositiveNumber);
    cmd_reverse->callback([&] {
        Circuit C = load_circuit(circuit_path);
        FamilyDescriptor desc = descriptor_from_circuit(C, u);
        std::cout << print_formula(build_sentence(desc)) << "\n";
        std::cout << "[arb]\n";
        auto dump = [&](const char* name, int arity, const std::vector<Rational>& tab) {
            std::cout << name << "/" << arity << " :";
            for (const Rational& v : tab) std::cout << ' ' << to_string(v);
            std::cout << "\n";
        };
        dump("t", desc.q, desc.t_table);
        dump("c", desc.q, desc.c_table);
        dump("in", desc.q + 1, desc.in_table);
        dump("pred", 2 * desc.q, desc.pred_table);
    });

    auto* cmd_encode = app.add_subcommand("encode", "print the encoding of a structure");
    cmd_encode->add_option("--sig", sig_path, "signature file")->required();
    cmd_encode->add_option("--structure", structure_path, "structure file")->required();
    cmd_encode->callback([&] {
        Signature sig = load_signature(sig_path);
        StructureFile sf = load_structure(structure_path, sig);
        std::vector<Rational> v = encode(sf.structure);
        for (std::size_t i = 0; i < v.size(); ++i)
            std::cout << (i ? " " : "") << to_string(v[i]);
        std::cout << "\n";
    });

    CheckEquivArgs ce;
    auto* cmd_equiv =
        app.add_subcommand("check-equiv", "compare model checker and compiled circuit");
    cmd_equiv->add_option("--formula", ce.formula_path, "formula file")->required();
    cmd_equiv->add_option("--sig", ce.sig_path, "signature file")->required();
    cmd_equiv->add_option("--u", ce.u, "universe size")->required()->check(CLI::PositiveNumber);
    cmd_equiv->add_option("--seed", ce.seed, "random seed");
    cmd_equiv->add_option("--count", ce.count, "number of random structures")
        ->check(CLI::PositiveNumber);
    cmd_equiv->add_flag("--exhaustive", ce.exhaustive,
                        "sweep all {0,1}-valued structures when few enough");
    cmd_equiv->callback([&] { rc = run_check_equiv(ce); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
