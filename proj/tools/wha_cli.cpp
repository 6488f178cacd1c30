#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wha/canonical.hpp"
#include "wha/instances.hpp"
#include "wha/io.hpp"

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

double default_tol() {
    if (const char* env = std::getenv("WHA_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw wha::ParseError("WHA_TOL is not a number");
        }
    }
    return 1e-8;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wha::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wha::ParseError("cannot open " + path + " for writing");
    out << bytes;
}

json spectrum_json(const std::vector<double>& spec) {
    json arr = json::array();
    for (double v : spec) arr.push_back(v);
    return arr;
}

json blocks_json(const wha::BlockAlgebra& a) {
    json arr = json::array();
    for (int b : a.blocks()) arr.push_back(b);
    return arr;
}

int cmd_validate(const std::string& file, double tol) {
    const wha::WeakHopf w = wha::load(read_input(file));
    const wha::StructureReport rep = wha::check_axioms(w, tol);
    std::cout << wha::report_to_json(rep, rep.pass());
    return rep.pass() ? 0 : 2;
}

int cmd_analyze(const std::string& file, double tol, uint64_t seed) {
    const wha::WeakHopf w = wha::load(read_input(file));
    json out;
    out["algebra"] = {{"blocks", blocks_json(w.A)}, {"label", w.A.label()}};

    const wha::CartanData ct = wha::cartan_target(w, seed, tol);
    const wha::CartanData cs = wha::cartan_source(w, seed, tol);
    out["cartan_target_blocks"] = blocks_json(ct.recovered.structure);
    out["cartan_source_blocks"] = blocks_json(cs.recovered.structure);

    const wha::AlgElement p = wha::haar_projection(w, tol);
    json pj = json::array();
    const wha::Vector pv = p.to_vector();
    for (Eigen::Index i = 0; i < pv.size(); ++i)
        pj.push_back(json::array({pv(i).real(), pv(i).imag()}));
    out["haar_projection"] = std::move(pj);

    const wha::LinearMapRep phi = wha::haar_measure(w, tol);
    json mj = json::array();
    for (Eigen::Index i = 0; i < phi.matrix().cols(); ++i)
        mj.push_back(json::array({phi.matrix()(0, i).real(), phi.matrix()(0, i).imag()}));
    out["haar_measure"] = std::move(mj);

    const wha::CanonicalElement ce = wha::canonical_element(w, seed, tol);
    json qj = json::array();
    const wha::Vector qv = ce.q.to_vector();
    for (Eigen::Index i = 0; i < qv.size(); ++i)
        qj.push_back(json::array({qv(i).real(), qv(i).imag()}));
    out["canonical_element"] = std::move(qj);
    out["spectrum_invariant"] = spectrum_json(ce.spectrum);

    const wha::WeakKacFlags flags = wha::is_weak_kac(w, tol);
    out["weak_kac"] = {{"kappa_involutive", flags.kappa_involutive},
                       {"phi_tracial", flags.phi_tracial}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_deform(const std::string& file, bool canonical, const std::string& k_file, bool sample,
               uint64_t seed, const std::string& out_path, double tol) {
    const wha::WeakHopf w = wha::load(read_input(file));
    wha::AlgElement k;
    std::string mode;
    if (canonical) {
        k = wha::canonical_element(w, 1, tol).q;
        mode = "canonical";
    } else if (!k_file.empty()) {
        k = wha::load_element(read_input(k_file));
        mode = "explicit";
    } else if (sample) {
        k = wha::sample_admissible(w, seed, tol).k;
        mode = "sampled seed " + std::to_string(seed);
    } else {
        throw wha::ParseError("deform: one of --canonical, --k, --sample is required");
    }
    const wha::WeakHopf deformed = wha::deform(w, k, tol, true);
    const wha::StructureReport rep = wha::check_axioms(deformed, tol);
    std::cerr << "deform (" << mode << "): axiom suite max residual " << rep.max_residual()
              << ", pass=" << (rep.pass() ? "true" : "false") << "\n";
    write_output(out_path, wha::save(deformed, {{"deformation", mode}}));
    return 0;
}

wha::FiniteGroupoid groupoid_from_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw wha::ParseError("groupoid spec must look like kind:N (cyclic, pair, discrete)");
    const std::string kind = spec.substr(0, colon);
    int n = 0;
    try {
        n = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw wha::ParseError("groupoid spec: bad count");
    }
    if (n < 1) throw wha::ParseError("groupoid spec: count must be >= 1");
    if (kind == "cyclic") return wha::FiniteGroupoid::cyclic_group(n);
    if (kind == "pair") return wha::FiniteGroupoid::pair_groupoid(n);
    if (kind == "discrete") return wha::FiniteGroupoid::discrete(n);
    throw wha::ParseError("groupoid spec: unknown kind " + kind);
}

int cmd_generate(const std::string& kind, int n, const std::string& gspec,
                 const std::vector<int>& blocks, const std::string& out_path) {
    wha::WeakHopf w;
    std::map<std::string, std::string> meta;
    if (kind == "pair-groupoid") {
        w = wha::pair_groupoid_wha(n);
        meta["generator"] = "pair-groupoid " + std::to_string(n);
    } else if (kind == "function-groupoid") {
        w = wha::function_algebra_wha(groupoid_from_spec(gspec));
        meta["generator"] = "function-groupoid " + gspec;
    } else {
        if (blocks.empty()) throw wha::ParseError("op-tensor: --blocks required");
        w = wha::op_tensor_wha(wha::BlockAlgebra(blocks, "base"));
        meta["generator"] = "op-tensor";
    }
    write_output(out_path, wha::save(w, meta));
    return 0;
}

int cmd_invariant(const std::string& file_a, const std::string& file_b, double tol) {
    const wha::WeakHopf wa = wha::load(read_input(file_a));
    const wha::WeakHopf wb = wha::load(read_input(file_b));
    const std::vector<double> sa = wha::spectrum_invariant(wa, 1, tol);
    const std::vector<double> sb = wha::spectrum_invariant(wb, 1, tol);
    double separation = std::numeric_limits<double>::infinity();
    if (sa.size() == sb.size()) {
        separation = 0.0;
        for (size_t i = 0; i < sa.size(); ++i)
            separation = std::max(separation, std::abs(sa[i] - sb[i]));
    }
    const bool distinct = separation > 1e-6;
    json out;
    out["spectrum_a"] = spectrum_json(sa);
    out["spectrum_b"] = spectrum_json(sb);
    out["separation"] = std::isinf(separation) ? json("dimension mismatch") : json(separation);
    out["provably_non_isomorphic"] = distinct;
    std::cout << out.dump(2) << "\n";
    return distinct ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for finite dimensional C*-quantum groupoids"};
    app.require_subcommand(1);

    double tol = 1e-8;
    try {
        tol = default_tol();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::string file, file_b, out_path, k_file, gspec;
    uint64_t seed = 1;
    bool canonical = false, sample = false;
    int n = 2;
    std::vector<int> blocks;

    auto* validate = app.add_subcommand("validate", "run the axiom suite on a document");
    validate->add_option("file", file, "input document ('-' for stdin)")->required();
    validate->add_option("--tol", tol, "residual tolerance");

    auto* analyze = app.add_subcommand("analyze", "Cartan structure, Haar data, canonical element");
    analyze->add_option("file", file, "input document ('-' for stdin)")->required();
    analyze->add_option("--tol", tol, "residual tolerance");
    analyze->add_option("--seed", seed, "seed for randomized structure recovery");

    auto* deform = app.add_subcommand("deform", "apply an antipode-rescaling deformation");
    deform->add_option("file", file, "input document ('-' for stdin)")->required();
    deform->add_flag("--canonical", canonical, "use k = q (makes kappa^2 = id on the base)");
    deform->add_option("--k", k_file, "element document holding k");
    deform->add_flag("--sample", sample, "draw a random admissible k");
    deform->add_option("--seed", seed, "sampling seed");
    deform->add_option("--out", out_path, "output path (default stdout)");
    deform->add_option("--tol", tol, "residual tolerance");

    auto* generate = app.add_subcommand("generate", "emit a built-in structure as a document");
    auto* gen_pair = generate->add_subcommand("pair-groupoid", "matrix algebra M_n instance");
    gen_pair->add_option("--n", n, "matrix size")->required();
    auto* gen_fun = generate->add_subcommand("function-groupoid",
                                             "function algebra of a finite groupoid");
    gen_fun->add_option("spec", gspec, "cyclic:N | pair:N | discrete:N")->required();
    auto* gen_op = generate->add_subcommand("op-tensor", "B^o (x) B over a block algebra base");
    gen_op->add_option("--blocks", blocks, "block sizes of the base")->required();
    generate->require_subcommand(1);
    generate->add_option("--out", out_path, "output path (default stdout)");

    auto* invariant = app.add_subcommand("invariant", "compare spectrum invariants");
    invariant->add_option("fileA", file, "first document")->required();
    invariant->add_option("fileB", file_b, "second document")->required();
    invariant->add_option("--tol", tol, "residual tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file, tol);
        if (analyze->parsed()) return cmd_analyze(file, tol, seed);
        if (deform->parsed())
            return cmd_deform(file, canonical, k_file, sample, seed, out_path, tol);
        if (generate->parsed()) {
            std::string kind;
            if (gen_pair->parsed()) kind = "pair-groupoid";
            else if (gen_fun->parsed()) kind = "function-groupoid";
            else kind = "op-tensor";
            return cmd_generate(kind, n, gspec, blocks, out_path);
        }
        if (invariant->parsed()) return cmd_invariant(file, file_b, tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
