#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bethe/bethe.hpp"
#include "bethe/fundamental.hpp"
#include "bethe/identities.hpp"
#include "bethe/io.hpp"
#include "bethe/repcount.hpp"
#include "bethe/reproduction.hpp"
#include "bethe/selfdual.hpp"

using namespace bethe;
using io::Json;

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    int samples = 5;
    int max_degree = -1;
    int d = -1;
    std::string out;

    std::string data_path, tuple_path, space_path;
    int direction = 1;
    std::string param = "0";
    int l = 1;
    std::string kind = "A";
    int rank = 1;
    std::vector<std::string> factors;
    std::string target;
    int trials = 200;
    int max_s = 4;
    int per_sk = 50;
};

Weight parse_weight(const std::string& s)
{
    Weight w;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            w.push_back(v);
        } catch (const std::exception&) {
            throw Error("invalid_input", "bad weight component '" + item + "'");
        }
    }
    return w;
}

std::string pretty_operator(const DifferenceOperator& op)
{
    std::string s;
    for (const auto& f : op.factors) s += "(D - " + f.str() + ")";
    return s;
}

Json frame_json(const FrameSeq& f) { return io::polys_to_json(f.entries); }

Json cmd_verify(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    VerifyResult r = verify_critical(d, y);
    Json j{{"critical", r.ok}};
    j["reason"] = r.ok ? Json(nullptr) : Json(r.reason);
    return j;
}

Json cmd_reproduce(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    Param p = c.param == "inf" ? Param{} : Param{parse_rational(c.param)};
    return io::tuple_to_json(immediate_descendant(d, y, c.direction, p));
}

Json cmd_population(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    std::optional<int> md;
    if (c.max_degree >= 0) md = c.max_degree;
    PopulationAtlas atlas = population_atlas(d, y, md);
    label_atlas(atlas);
    return io::atlas_to_json(atlas);
}

Json cmd_space(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    PolySpace v = fundamental_basis(d, y);
    auto frame = frame_of_space(v, c.samples, c.seed);
    FrameSeq expected = t_polynomials(d);
    Json j{{"basis", io::polys_to_json(v.basis)}};
    j["frame"] = frame ? frame_json(*frame) : Json(nullptr);
    j["expectedFrame"] = frame_json(expected);
    j["consistent"] = frame && *frame == expected;
    return j;
}

Json cmd_operator(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    DifferenceOperator op = fundamental_operator(d, y);
    Json nf = Json::array();
    for (const auto& f : operator_normal_form(op)) nf.push_back(io::ratfunc_to_json(f));
    return Json{{"h", to_string(op.h)}, {"factors", io::operator_to_json(op)}, {"normalForm", nf}, {"pretty", pretty_operator(op)}};
}

Json cmd_schubert(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    PolySpace v = fundamental_basis(d, y);
    const int amb = c.d >= 0 ? c.d : max_degree(v.basis);
    Json measured = Json::array();
    for (const auto& z : d.z) measured.push_back(io::schubert_to_json(schubert_position(v, z, amb)));
    measured.push_back(io::schubert_to_json(schubert_position(v, std::nullopt, amb)));
    Json j{{"d", amb}, {"measured", measured}};
    try {
        auto er = expected_ramification(d, degrees(y), amb);
        Json e = Json::array();
        for (const auto& sp : er.at_z) e.push_back(io::schubert_to_json(sp));
        e.push_back(io::schubert_to_json(er.at_infinity));
        j["expected"] = e;
    } catch (const Error& ex) {
        j["expected"] = nullptr;
        j["expectedError"] = ex.code();
    }
    return j;
}

Json cmd_selfdual(const RunConfig& c)
{
    Json in = io::load_file(c.space_path);
    PolySpace v{io::polys_from_json(in.at("basis")), in.contains("h") ? io::rational_from_json(in.at("h")) : Rational(1)};
    v.check_independent();
    if (v.dim() < 2) throw Error("invalid_input", "space needs dim >= 2");
    FrameSeq frame = in.contains("frame") ? FrameSeq{io::polys_from_json(in.at("frame")), v.h} : FrameSeq::trivial(v.dim() - 1, v.h);
    Json j{{"selfdual", is_selfdual(v, frame)}};
    if (j["selfdual"].get<bool>()) {
        Matrix g = canonical_form(v, frame);
        j["gram"] = io::matrix_to_json(g);
        j["parity"] = g.is_symmetric() ? "symmetric" : "skew";
        j["witt"] = io::polys_to_json(witt_basis(v, frame));
    }
    return j;
}

Json cmd_fold(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    if (d.kind == Kind::A) throw Error("invalid_input", "fold needs kind B or C data");
    InitialData lifted = lift_data(d);
    PolyTuple ya = fold(d.kind, y, d.h);
    VerifyResult r = verify_critical(lifted, ya);
    return Json{{"liftedData", io::data_to_json(lifted)}, {"tuple", io::polys_to_json(ya)}, {"critical", r.ok}};
}

Json cmd_c1(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    PolyTuple y = io::tuple_from_json(io::load_file(c.tuple_path));
    if (d.kind != Kind::C || d.N != 1 || y.size() != 1) throw Error("invalid_input", "c1 needs kind C, N = 1 data and a 1-tuple");
    C1Triple t = c1_population(t_polynomials(d)[0], y[0], d.h);
    return Json{{"u1", io::poly_to_json(t.u1)}, {"u2", io::poly_to_json(t.u2)}, {"u3", io::poly_to_json(t.u3)}};
}

Json cmd_multiplicity(const RunConfig& c)
{
    RootSystem rs(parse_kind(c.kind), c.rank);
    std::vector<Weight> fs;
    for (const auto& f : c.factors) fs.push_back(parse_weight(f));
    Weight target = parse_weight(c.target);
    for (const auto& w : fs)
        if (static_cast<int>(w.size()) != c.rank) throw Error("dimension_mismatch", "weights need rank entries");
    if (static_cast<int>(target.size()) != c.rank) throw Error("dimension_mismatch", "weights need rank entries");
    return Json{{"multiplicity", tensor_multiplicity(rs, fs, target)}};
}

Json cmd_count_check(const RunConfig& c)
{
    InitialData d = io::data_from_json(io::load_file(c.data_path));
    return io::count_report_to_json(count_check(d, c.l));
}

Json cmd_identities(const RunConfig& c, bool& all_pass)
{
    IdentityBatch b;
    b.trials = c.trials;
    b.max_s = c.max_s;
    b.per_sk = c.per_sk;
    b.max_s_wr = std::min(c.max_s, 3);
    b.seed = c.seed;
    Json rows = Json::array();
    all_pass = true;
    for (const auto& t : run_identity_batch(b)) {
        rows.push_back(Json{{"identity", identity_name(t.id)}, {"trials", t.trials}, {"failures", t.failures}});
        if (t.failures) all_pass = false;
    }
    return Json{{"allPass", all_pass}, {"results", rows}};
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Exact Bethe-equation toolkit: verification, reproduction, populations, spaces and counts."};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "Seed for all randomized steps (default 0)")->envname("BETHE_SEED")->check(CLI::NonNegativeNumber);
    app.add_option("--samples", cfg.samples, "Random samples per Wronskian gcd in frame detection")->check(CLI::NonNegativeNumber);
    app.add_option("--max-degree", cfg.max_degree, "Degree cap for population exploration");
    app.add_option("-d", cfg.d, "Ambient degree for Schubert positions");
    app.add_option("--out", cfg.out, "Write the JSON result to this file instead of stdout");

    auto need_data = [&](CLI::App* s) { s->add_option("--data", cfg.data_path, "Initial data JSON")->required()->check(CLI::ExistingFile); };
    auto need_tuple = [&](CLI::App* s, const char* name) {
        s->add_option(name, cfg.tuple_path, "Polynomial tuple JSON")->required()->check(CLI::ExistingFile);
    };

    auto* verify = app.add_subcommand("verify", "Check a tuple for h-criticality");
    need_data(verify);
    need_tuple(verify, "--tuple");
    auto* reproduce = app.add_subcommand("reproduce", "Immediate descendant in one direction");
    need_data(reproduce);
    need_tuple(reproduce, "--tuple");
    reproduce->add_option("--direction", cfg.direction, "Direction i (1-based)")->required();
    reproduce->add_option("--c", cfg.param, "Pencil parameter: rational string or 'inf'")
        ->check(CLI::Validator(
            [](std::string& v) -> std::string {
                if (v == "inf") return {};
                try {
                    parse_rational(v);
                } catch (const Error& e) {
                    return e.what();
                }
                return {};
            },
            "RATIONAL|inf"));
    auto* population = app.add_subcommand("population", "Degree-vector atlas of a population");
    need_data(population);
    need_tuple(population, "--seed-tuple");
    auto* space = app.add_subcommand("space", "Fundamental space and its frame");
    need_data(space);
    need_tuple(space, "--tuple");
    auto* oper = app.add_subcommand("operator", "Fundamental difference operator");
    need_data(oper);
    need_tuple(oper, "--tuple");
    auto* schubert = app.add_subcommand("schubert", "Measured and expected Schubert positions");
    need_data(schubert);
    need_tuple(schubert, "--tuple");
    auto* selfdual = app.add_subcommand("selfdual", "Selfduality, Gram matrix and Witt basis of a space");
    selfdual->add_option("--space", cfg.space_path, "Space JSON {basis, h, frame?}")->required()->check(CLI::ExistingFile);
    auto* foldc = app.add_subcommand("fold", "Fold a B/C tuple into type A");
    need_data(foldc);
    need_tuple(foldc, "--tuple");
    auto* c1 = app.add_subcommand("c1", "C_1 population triple");
    need_data(c1);
    need_tuple(c1, "--tuple");
    auto* mult = app.add_subcommand("multiplicity", "Multiplicity of L_target in a tensor product");
    mult->add_option("--kind", cfg.kind, "Root system kind A, B or C");
    mult->add_option("--rank", cfg.rank, "Rank")->required();
    mult->add_option("--factor", cfg.factors, "Dynkin labels of a factor, comma separated (repeatable)")->required();
    mult->add_option("--target", cfg.target, "Dynkin labels of the target")->required();
    auto* count = app.add_subcommand("count-check", "Compare sl_2 solution count with the multiplicity");
    need_data(count);
    count->add_option("--l", cfg.l, "Number of Bethe roots");
    auto* ids = app.add_subcommand("identities", "Random Wronskian identity batch");
    ids->add_option("--trials", cfg.trials, "Instances per identity of the first group")->check(CLI::NonNegativeNumber);
    ids->add_option("--max-s", cfg.max_s, "Largest number of functions")->check(CLI::PositiveNumber);
    ids->add_option("--per-sk", cfg.per_sk, "Instances per (s,k) for the two-level identities")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Json result;
    int code = 0;
    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "verify") result = cmd_verify(cfg);
        else if (name == "reproduce") result = cmd_reproduce(cfg);
        else if (name == "population") result = cmd_population(cfg);
        else if (name == "space") result = cmd_space(cfg);
        else if (name == "operator") result = cmd_operator(cfg);
        else if (name == "schubert") result = cmd_schubert(cfg);
        else if (name == "selfdual") result = cmd_selfdual(cfg);
        else if (name == "fold") result = cmd_fold(cfg);
        else if (name == "c1") result = cmd_c1(cfg);
        else if (name == "multiplicity") result = cmd_multiplicity(cfg);
        else if (name == "count-check") result = cmd_count_check(cfg);
        else if (name == "identities") {
            bool ok = true;
            result = cmd_identities(cfg, ok);
            if (!ok) code = 1;
        }
    } catch (const Error& e) {
        std::cerr << io::error_to_json(e).dump() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << io::error_to_json(Error("invalid_input", e.what())).dump() << "\n";
        return 1;
    }

    const std::string text = result.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << io::error_to_json(Error("io_error", "cannot write " + cfg.out)).dump() << "\n";
            return 1;
        }
        f << text;
    }
    return code;
}
