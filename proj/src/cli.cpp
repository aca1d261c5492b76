#include "magnitude/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "magnitude/fixtures.hpp"
#include "magnitude/fourpoint.hpp"
#include "magnitude/homology.hpp"
#include "magnitude/inclexcl.hpp"
#include "magnitude/io.hpp"
#include "magnitude/spacegen.hpp"
#include "magnitude/verify.hpp"

namespace magnitude::cli {

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string mode = "auto"; // auto | exact | float
    double tolerance = kGateTolerance;
};

void emit(const json& doc, const std::string& output_path, std::ostream& out) {
    if (output_path.empty())
        out << doc.dump(2) << "\n";
    else
        io::save_json(output_path, doc);
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, std::size_t n) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw InputError("pair must be 'i,j' with 1-based indices");
    try {
        long i = std::stol(text.substr(0, comma));
        long j = std::stol(text.substr(comma + 1));
        if (i < 1 || j < 1 || i > static_cast<long>(n) || j > static_cast<long>(n) || i == j)
            throw InputError("pair indices must be distinct and in 1.." + std::to_string(n));
        return {static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
    } catch (const std::invalid_argument&) {
        throw InputError("pair must be 'i,j' with 1-based indices");
    }
}

Subspace parse_indices(const std::string& text, std::size_t n) {
    std::vector<std::size_t> idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            long v = std::stol(item);
            if (v < 1 || v > static_cast<long>(n))
                throw InputError("index " + item + " out of range 1.." + std::to_string(n));
            idx.push_back(static_cast<std::size_t>(v - 1));
        } catch (const std::invalid_argument&) {
            throw InputError("subspace must be a comma list of 1-based indices");
        }
    }
    return Subspace(idx);
}

bool use_exact(const CommonOpts& opts, const io::SpaceFile& file) {
    if (opts.mode == "exact") {
        (void)file.require_exact(); // throws for distance files
        return true;
    }
    if (opts.mode == "float") return false;
    return file.mode == io::FileMode::Similarity;
}

json singularity_error(const std::exception& e) {
    return json{{"error", {{"kind", "singularity"}, {"what", e.what()}}}};
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_mag(const CommonOpts& opts, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    json doc;
    try {
        if (use_exact(opts, file)) {
            const auto& s = file.require_exact();
            Vector<Rational> w = weighting(s);
            Rational total(0);
            json weights = json::array();
            for (const auto& x : w) {
                total += x;
                weights.push_back(fraction_string(x));
            }
            doc = json{{"mode", "exact"},
                       {"n", s.size()},
                       {"magnitude", fraction_string(total)},
                       {"weighting", std::move(weights)}};
        } else {
            auto s = file.float_similarity();
            Vector<double> w = weighting(s);
            double total = 0;
            for (double x : w) total += x;
            doc = json{{"mode", "float"}, {"n", s.size()}, {"magnitude", total},
                       {"weighting", w}};
        }
    } catch (const SingularMatrixError& e) {
        emit(singularity_error(e), opts.output, out);
        return 0;
    }
    emit(doc, opts.output, out);
    return 0;
}

int cmd_posdef(const CommonOpts& opts, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    json doc;
    if (use_exact(opts, file)) {
        const auto& s = file.require_exact();
        auto minors = leading_principal_minors(s);
        json list = json::array();
        bool pd = true;
        for (const auto& m : minors) {
            pd = pd && m > 0;
            list.push_back(fraction_string(m));
        }
        doc = json{{"mode", "exact"}, {"positive_definite", pd}, {"minors", std::move(list)}};
    } else {
        auto s = file.float_similarity();
        auto minors = leading_principal_minors(s);
        bool pd = true;
        for (double m : minors) pd = pd && m > 0;
        doc = json{{"mode", "float"}, {"positive_definite", pd}, {"minors", minors}};
    }
    emit(doc, opts.output, out);
    return 0;
}

template <typename T>
json decomposition_json(const SimilaritySpace<T>& s, std::size_t i, std::size_t j) {
    auto d = inclexcl::pair_decomposition(s, i, j);
    auto scalar = [](const T& v) -> json {
        if constexpr (is_exact_v<T>)
            return fraction_string(v);
        else
            return v;
    };
    json doc{{"pair", {i + 1, j + 1}},
             {"b_zero", scalar(d.b_zero)},
             {"b_minus", scalar(d.b_minus)},
             {"delta_A", scalar(d.delta_A)},
             {"delta_B", scalar(d.delta_B)},
             {"delta_overlap", scalar(d.delta_overlap)},
             {"lhs", scalar(d.lhs)},
             {"rhs", scalar(d.rhs)},
             {"residual", scalar(d.residual())}};
    if (s.size() == 4 && i == 0 && j == 1) {
        auto b = fourpoint::bounds4(s);
        doc["b_plus"] = scalar(b.b_plus);
        json cases = json::array();
        for (auto label : fourpoint::classify_case(s)) cases.push_back(fourpoint::to_string(label));
        doc["cases"] = std::move(cases);
    }
    return doc;
}

int cmd_decompose(const CommonOpts& opts, const std::string& pair, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    auto [i, j] = parse_pair(pair, file.size());
    try {
        if (use_exact(opts, file))
            emit(decomposition_json(file.require_exact(), i, j), opts.output, out);
        else
            emit(decomposition_json(file.float_similarity(), i, j), opts.output, out);
    } catch (const SingularMatrixError& e) {
        emit(singularity_error(e), opts.output, out);
    }
    return 0;
}

template <typename T>
json inclexcl_json(const SimilaritySpace<T>& s, std::size_t i, std::size_t j,
                   double tol = kGateTolerance) {
    auto scalar = [](const T& v) -> json {
        if constexpr (is_exact_v<T>)
            return fraction_string(v);
        else
            return v;
    };
    auto d = inclexcl::defect(s, i, j);
    auto cmp = inclexcl::comparison_report(s, i, j, tol);
    return json{{"pair", {i + 1, j + 1}},
                {"b_minus", scalar(cmp.b_minus)},
                {"b_zero", scalar(cmp.b_zero)},
                {"z_pair", scalar(cmp.z_pair)},
                {"delta_direct", scalar(d.delta_direct)},
                {"delta_formula", scalar(d.delta_formula)},
                {"c1", cmp.c1},
                {"c2", cmp.c2}};
}

int cmd_inclexcl(const CommonOpts& opts, const std::string& pair, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    auto [i, j] = parse_pair(pair, file.size());
    try {
        if (use_exact(opts, file))
            emit(inclexcl_json(file.require_exact(), i, j), opts.output, out);
        else
            emit(inclexcl_json(file.float_similarity(), i, j, opts.tolerance), opts.output,
                 out);
    } catch (const SingularMatrixError& e) {
        emit(singularity_error(e), opts.output, out);
    }
    return 0;
}

json witnesses_json(const std::vector<inclexcl::GateWitness>& ws) {
    json arr = json::array();
    for (const auto& w : ws) {
        json rec{{"a", w.a + 1}, {"b", w.b + 1}};
        rec["gate"] = w.gate ? json(*w.gate + 1) : json(nullptr);
        arr.push_back(std::move(rec));
    }
    return arr;
}

json projections_json(const std::vector<inclexcl::ProjectionWitness>& ws) {
    json arr = json::array();
    for (const auto& w : ws) {
        json rec{{"point", w.point + 1}};
        rec["projection"] = w.projection ? json(*w.projection + 1) : json(nullptr);
        arr.push_back(std::move(rec));
    }
    return arr;
}

int cmd_conditions(const CommonOpts& opts, const std::string& a_spec,
                   const std::string& b_spec, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    Subspace a = parse_indices(a_spec, file.size());
    Subspace b = parse_indices(b_spec, file.size());
    inclexcl::ConditionReport r;
    if (use_exact(opts, file))
        r = inclexcl::check_conditions(file.require_exact(), a, b);
    else
        r = inclexcl::check_conditions(file.float_similarity(), a, b, opts.tolerance);
    emit(json{{"c1", r.c1},
              {"c2", r.c2()},
              {"c2a", r.c2a},
              {"c2b", r.c2b},
              {"c1_witnesses", witnesses_json(r.c1_witnesses)},
              {"c2a_witnesses", projections_json(r.c2a_witnesses)},
              {"c2b_witnesses", projections_json(r.c2b_witnesses)}},
         opts.output, out);
    return 0;
}

int cmd_homology(const CommonOpts& opts, int k, double ell, std::ostream& out) {
    io::SpaceFile file = io::load_space(opts.input);
    const auto& metric = file.require_metric();

    // Snap a truncated decimal request onto the attainable spectrum before
    // matching at the strict tolerance.
    double target = ell;
    double best_gap = 1e-4;
    for (double v : homology::length_spectrum(metric, k)) {
        if (std::fabs(v - ell) < best_gap) {
            best_gap = std::fabs(v - ell);
            target = v;
        }
    }
    auto result = homology::magnitude_homology(metric, k, target);
    json torsion = json::array();
    for (const auto& t : result.torsion) torsion.push_back(t.get_si());
    emit(json{{"k", k},
              {"ell", target},
              {"rank", result.rank},
              {"torsion", std::move(torsion)},
              {"basis_size", result.basis_sizes}},
         opts.output, out);
    return 0;
}

int cmd_gen(std::size_t n, std::uint64_t seed, unsigned bound, const std::string& fixture,
            const std::string& output, std::ostream& out) {
    json doc;
    if (!fixture.empty()) {
        if (!fixtures::is_known_fixture(fixture))
            throw InputError("unknown fixture '" + fixture +
                             "' (known: q4, equilateral4, mv4, circle1, circle2, path3, k32)");
        if (fixture == "q4") doc = io::similarity_json(fixtures::q4());
        if (fixture == "equilateral4")
            doc = io::similarity_json(fixtures::equilateral(4, Rational(1, 2)));
        if (fixture == "k32") doc = io::similarity_json(spacegen::k32_similarity(Rational(3, 4)));
        if (fixture == "mv4") doc = io::distance_json(fixtures::mv4_metric());
        if (fixture == "circle1") doc = io::distance_json(fixtures::circle1_metric());
        if (fixture == "circle2") doc = io::distance_json(fixtures::circle2_metric());
        if (fixture == "path3") {
            auto p = fixtures::path3_metric();
            Matrix<double> d(3, 3, 0.0);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) d(i, j) = p.d(i, j).get_d();
            doc = io::distance_json(FiniteMetricSpace<double>(std::move(d)));
        }
    } else {
        spacegen::GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.denominator_bound = bound;
        doc = io::similarity_json(spacegen::random_similarity(n, cfg));
    }
    emit(doc, output, out);
    return 0;
}

int cmd_verify(const verify::VerifyOptions& opts, const std::string& theorem,
               const std::string& format, const std::string& output, std::ostream& out,
               std::ostream& err) {
    verify::CampaignReport report = verify::run_theorem(theorem, opts);
    err << report.theorem << ": " << report.samples << " samples, "
        << report.violations.size() << " violations, " << report.elapsed_seconds << " s on "
        << report.threads << " thread(s)\n";
    if (format == "csv") {
        if (output.empty())
            out << io::campaign_csv(report);
        else {
            std::ofstream f(output);
            if (!f) throw InputError(output + ": cannot open for writing");
            f << io::campaign_csv(report);
        }
    } else {
        emit(io::campaign_json(report), output, out);
    }
    return report.passed() ? 0 : 1;
}

int cmd_search5(unsigned bound, const std::string& witness_path, const std::string& output,
                std::ostream& out) {
    spacegen::GeneratorConfig cfg;
    cfg.denominator_bound = bound;
    spacegen::NonPosDefWitness w = spacegen::find_non_posdef_5pt(cfg);
    if (!witness_path.empty()) io::save_json(witness_path, io::similarity_json(w.space));
    emit(json{{"z", fraction_string(w.z)},
              {"t", w.t},
              {"determinant", fraction_string(w.det)},
              {"tried", w.tried},
              {"positive_definite", false},
              {"all_4pt_subspaces_positive_definite", true},
              {"witness", witness_path.empty() ? json(nullptr) : json(witness_path)}},
         output, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"magnitude, weightings, and positive definiteness of finite metric spaces"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string pair = "1,2";
    std::string a_spec, b_spec;
    int k = 1;
    double ell = 0.0;
    std::size_t gen_n = 4;
    std::uint64_t seed = 0;
    unsigned bound = 32;
    std::string fixture;
    std::string theorem;
    std::string format = "json";
    std::string witness_path;
    verify::VerifyOptions vopts;
    bool serial = false;
    std::vector<std::size_t> sizes;

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input)
            cmd->add_option("--input", common.input, "space file (JSON)")->required();
        cmd->add_option("--output", common.output, "write the report to this file");
        cmd->add_option("--mode", common.mode, "exact | float | auto")
            ->check(CLI::IsMember({"auto", "exact", "float"}));
        cmd->add_option("--tolerance", common.tolerance, "float-mode gate-equality tolerance");
    };

    CLI::App* mag = app.add_subcommand("mag", "weighting and magnitude");
    add_common(mag);
    CLI::App* posdef = app.add_subcommand("posdef", "leading principal minors and definiteness");
    add_common(posdef);
    CLI::App* decompose = app.add_subcommand("decompose", "completed-square pair decomposition");
    add_common(decompose);
    decompose->add_option("--pair", pair, "distinguished pair, 1-based 'i,j'");
    CLI::App* incl = app.add_subcommand("inclexcl", "inclusion-exclusion defect report");
    add_common(incl);
    incl->add_option("--pair", pair, "distinguished pair, 1-based 'i,j'");
    CLI::App* cond = app.add_subcommand("conditions", "gating conditions for a cover");
    add_common(cond);
    cond->add_option("--a", a_spec, "subspace A, e.g. 1,3,4")->required();
    cond->add_option("--b", b_spec, "subspace B, e.g. 2,3,4")->required();
    CLI::App* hom = app.add_subcommand("homology", "magnitude homology rank at (k, ell)");
    add_common(hom);
    hom->add_option("--k", k, "degree (0..3)")->required();
    hom->add_option("--ell", ell, "chain length")->required();
    CLI::App* gen = app.add_subcommand("gen", "emit a space file");
    gen->add_option("--n", gen_n, "point count for random similarity spaces");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--denominator-bound", bound, "max denominator of sampled entries");
    gen->add_option("--fixture", fixture, "named fixture instead of a random space");
    gen->add_option("--output", common.output, "write the space file here");
    CLI::App* ver = app.add_subcommand("verify", "run a verification campaign");
    ver->add_option("--theorem", theorem, "one of the stable theorem names")->required();
    ver->add_option("--samples", vopts.samples, "sample count");
    ver->add_option("--seed", vopts.seed, "campaign seed");
    ver->add_option("--denominator-bound", vopts.denominator_bound, "sampler denominator bound");
    ver->add_option("--sizes", sizes, "space sizes to cycle through");
    ver->add_flag("--serial", serial, "use the serial reference engine");
    ver->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    ver->add_option("--output", common.output, "write the report to this file");
    CLI::App* search = app.add_subcommand("search5", "find a non-positive-definite 5-point space");
    search->add_option("--denominator-bound", bound, "similarity grid bound");
    search->add_option("--witness", witness_path, "store the witness space file here");
    search->add_option("--output", common.output, "write the report to this file");

    std::vector<const char*> argv;
    argv.push_back("magtool");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (mag->parsed()) return cmd_mag(common, out);
        if (posdef->parsed()) return cmd_posdef(common, out);
        if (decompose->parsed()) return cmd_decompose(common, pair, out);
        if (incl->parsed()) return cmd_inclexcl(common, pair, out);
        if (cond->parsed()) return cmd_conditions(common, a_spec, b_spec, out);
        if (hom->parsed()) return cmd_homology(common, k, ell, out);
        if (gen->parsed()) return cmd_gen(gen_n, seed, bound, fixture, common.output, out);
        if (ver->parsed()) {
            vopts.sizes = sizes;
            vopts.execution =
                serial ? verify::Execution::Serial : verify::Execution::Parallel;
            return cmd_verify(vopts, theorem, format, common.output, out, err);
        }
        if (search->parsed()) return cmd_search5(bound, witness_path, common.output, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace magnitude::cli
