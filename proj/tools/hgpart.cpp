// hgpart: class groups, representation counts, lattices and moment reports.
//
// Exit status: 0 success, 1 failed verification or runtime error,
// 2 invalid parameters, 3 work budget exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "hgpart/lattice.hpp"
#include "hgpart/moments.hpp"
#include "hgpart/quadforms.hpp"
#include "hgpart/repcount.hpp"
#include "hgpart/sieve.hpp"
#include "hgpart/verify.hpp"

using nlohmann::ordered_json;
using namespace hgpart;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Config {
    i64 d = 0;
    i64 from = 1, to = 0;
    std::vector<i64> g_list = {3, 5};
    i64 g = 3;
    i64 X = 0, Z = 0;
    i64 ell = 1, b = 0;
    std::vector<i64> basis;
    std::string radius = "10";
    std::string k = "1";
    std::vector<i64> grid;
    std::string column = "torsion";
    std::string mode = "squarefree";
    std::string pairs = "ordered";
    std::string output;
    std::string sweep_csv;
    u64 budget = 0;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool quick = false;
    bool witnesses = false;
};

long double parse_real(const std::string& text) {
    const auto [n, d] = parse_fraction(text);
    return static_cast<long double>(n) / static_cast<long double>(d);
}

moments::Column parse_column(const std::string& s) {
    if (s == "torsion") return moments::Column::torsion;
    if (s == "sylow") return moments::Column::sylow;
    throw std::invalid_argument("--column must be torsion or sylow, got '" + s + "'");
}

moments::Mode parse_mode(const std::string& s) {
    if (s == "squarefree") return moments::Mode::squarefree;
    if (s == "fundamental") return moments::Mode::fundamental;
    throw std::invalid_argument("--mode must be squarefree or fundamental, got '" + s + "'");
}

ordered_json vec_json(const lattice::Vec2& v) { return ordered_json::array({v.x, v.y}); }

void emit(const ordered_json& doc, const Config& cfg, const std::string& name) {
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!cfg.output.empty()) {
        std::filesystem::create_directories(cfg.output);
        std::ofstream out(std::filesystem::path(cfg.output) / name);
        out << text;
        if (!out) throw std::runtime_error("cannot write " + (std::filesystem::path(cfg.output) / name).string());
    }
}

ordered_json meta(const std::string& command, ordered_json config) {
    return {{"command", command}, {"version", kVersion}, {"config", std::move(config)}};
}

int cmd_classgroup(const Config& cfg) {
    const auto disc = quadforms::fundamental_discriminant(cfg.d);
    const auto group = quadforms::enumerate_class_group(disc.delta);
    ordered_json parts = ordered_json::object();
    for (i64 g : cfg.g_list) {
        const auto p = quadforms::g_part(group, g);
        parts["h" + std::to_string(g)] = {{"torsion_count", p.torsion_count}, {"sylow_order", p.sylow_order}};
    }
    ordered_json doc = meta("classgroup", {{"d", cfg.d}, {"g", cfg.g_list}});
    doc["d"] = disc.d;
    doc["delta"] = disc.delta;
    doc["h"] = group.h;
    doc["divisors"] = group.divisors;
    doc["g_parts"] = parts;
    emit(doc, cfg, "classgroup_" + std::to_string(cfg.d) + ".json");
    return 0;
}

int cmd_sweep(const Config& cfg) {
    if (cfg.output.empty()) throw std::invalid_argument("sweep needs --output DIR");
    std::filesystem::create_directories(cfg.output);
    const std::string base = "sweep_" + std::to_string(cfg.from) + "_" + std::to_string(cfg.to);
    const auto csv = (std::filesystem::path(cfg.output) / (base + ".csv")).string();
    moments::SweepTable table;
    try {
        table = moments::sweep(cfg.from, cfg.to, cfg.g_list, {.jobs = cfg.jobs, .chunk = 1 << 16, .csv_path = csv});
    } catch (const moments::SweepIOError& e) {
        std::cerr << "sweep: " << e.what() << "; rows for d in [" << e.completed_lo << ", " << e.completed_hi
                  << ") are complete in " << csv << "\n";
        return 1;
    }
    ordered_json doc = meta("sweep", {{"from", cfg.from}, {"to", cfg.to}, {"g", cfg.g_list}, {"jobs", cfg.jobs}});
    doc["csv"] = csv;
    doc["rows"] = table.size();
    std::cout << doc.dump(2) << "\n";
    std::ofstream(std::filesystem::path(cfg.output) / (base + ".json")) << doc.dump(2) << "\n";
    return 0;
}

int cmd_repcount(const Config& cfg) {
    const auto s = repcount::s_g_direct(cfg.d, cfg.Z, cfg.g);
    if (cfg.pairs != "ordered" && cfg.pairs != "unordered")
        throw std::invalid_argument("--pairs must be ordered or unordered, got '" + cfg.pairs + "'");
    ordered_json doc = meta("repcount", {{"d", cfg.d}, {"Z", cfg.Z}, {"g", cfg.g}, {"pairs", cfg.pairs}});
    doc["S_g"] = cfg.pairs == "ordered" ? s.ordered_pairs : s.unordered_pairs;
    doc["ordered_pairs"] = s.ordered_pairs;
    doc["unordered_pairs"] = s.unordered_pairs;
    doc["split_primes"] = sieve::split_primes(cfg.d, cfg.Z).primes;
    ordered_json w = ordered_json::array();
    for (const auto& x : s.witnesses) w.push_back({{"p", x.p}, {"p2", x.p2}, {"u", x.u}, {"v", x.v}});
    doc["witnesses"] = w;
    emit(doc, cfg, "repcount_" + std::to_string(cfg.d) + "_" + std::to_string(cfg.Z) + ".json");
    if (!cfg.output.empty()) std::ofstream(std::filesystem::path(cfg.output) / "witnesses.csv") << repcount::witness_csv(s);
    return 0;
}

int cmd_tg(const Config& cfg) {
    const auto params = repcount::window_params(cfg.X, cfg.Z, cfg.g);
    WorkBudget budget(cfg.budget);
    const auto t = repcount::t_g(params, &budget);
    ordered_json doc = meta("tg", {{"X", cfg.X}, {"Z", cfg.Z}, {"g", cfg.g}, {"budget", cfg.budget}});
    doc["U"] = to_string(params.U);
    doc["V"] = params.V();
    doc["triples"] = t.triples.size();
    doc["T"] = t.T;
    doc["pairwise"] = t.pairwise;
    doc["T0"] = t.T0;
    ordered_json by_delta = ordered_json::object();
    for (const auto& [delta, c] : t.T3_by_delta) by_delta[std::to_string(delta)] = c;
    doc["T3_by_delta"] = by_delta;
    doc["pair_identity_checked"] = t.pair_identity_checked;
    doc["work_used"] = budget.used();
    emit(doc, cfg, "tg_" + std::to_string(cfg.X) + "_" + std::to_string(cfg.Z) + ".json");
    if (!cfg.output.empty()) std::ofstream(std::filesystem::path(cfg.output) / "triples.csv") << repcount::triple_csv(t.triples);
    return 0;
}

int cmd_lattice(const Config& cfg) {
    lattice::Lattice2D lat;
    ordered_json config;
    if (!cfg.basis.empty()) {
        if (cfg.basis.size() != 4) throw std::invalid_argument("--basis takes x1,y1,x2,y2");
        lat = lattice::lattice_from_basis({cfg.basis[0], cfg.basis[1]}, {cfg.basis[2], cfg.basis[3]});
        config = {{"basis", cfg.basis}};
    } else {
        lat = lattice::lattice_from_congruence(cfg.ell, cfg.b);
        config = {{"ell", cfg.ell}, {"b", cfg.b}};
    }
    config["radius"] = cfg.radius;
    config["budget"] = cfg.budget;
    const long double radius = parse_real(cfg.radius);
    const auto [red, m] = lattice::gauss_reduce(lat);
    WorkBudget budget(cfg.budget);
    const i64 points = lattice::count_points(lat, radius, &budget);
    ordered_json doc = meta("lattice", config);
    doc["det"] = lat.det;
    doc["basis"] = ordered_json::array({vec_json(lat.b1), vec_json(lat.b2)});
    doc["reduced_basis"] = ordered_json::array({vec_json(red.b1), vec_json(red.b2)});
    doc["minima"] = {{"lambda1_squared", to_string(m.norm1)},
                     {"lambda2_squared", to_string(m.norm2)},
                     {"lambda1", static_cast<double>(m.lambda1())},
                     {"lambda2", static_cast<double>(m.lambda2())},
                     {"v1", vec_json(m.v1)},
                     {"v2", vec_json(m.v2)},
                     {"minkowski_holds", lattice::minkowski_holds(m, lat.det)}};
    doc["points"] = points;
    emit(doc, cfg, "lattice.json");
    return 0;
}

int cmd_moments(const Config& cfg) {
    const auto k = moments::Rational::parse(cfg.k);
    const auto column = parse_column(cfg.column);
    const auto mode = parse_mode(cfg.mode);
    const auto grid = cfg.grid.empty() ? moments::default_grid() : cfg.grid;
    i64 cap = 0;
    for (i64 X : grid) cap = std::max(cap, X);
    std::vector<i64> g_list = {cfg.g};
    if (cfg.g != 3) g_list.insert(g_list.begin(), 3);
    const auto table =
        moments::sweep(1, cap, g_list, {.jobs = cfg.jobs, .chunk = 1 << 16, .csv_path = cfg.sweep_csv});
    const auto rep = moments::moment_report(table, cfg.g, k, grid, column, mode);
    ordered_json doc = meta("moments", {{"g", cfg.g},
                                        {"k", k.str()},
                                        {"grid", grid},
                                        {"column", moments::to_string(column)},
                                        {"mode", moments::to_string(mode)},
                                        {"jobs", cfg.jobs}});
    ordered_json pts = ordered_json::array();
    for (const auto& p : rep.points) {
        ordered_json e = {{"X", p.X}, {"sum", static_cast<double>(p.sum.value)}, {"terms", p.sum.terms}};
        if (p.sum.exact) e["exact"] = to_string(*p.sum.exact);
        pts.push_back(e);
    }
    doc["points"] = pts;
    if (rep.fit) {
        doc["fit"] = {{"slope", rep.fit->slope}, {"intercept", rep.fit->intercept}, {"r2", rep.fit->r2},
                      {"residuals", rep.fit->residuals}};
    } else {
        doc["fit"] = nullptr;
    }
    ordered_json theory = {{"sigma", rep.theory.sigma.str()},
                           {"sigma_value", static_cast<double>(rep.theory.sigma.value())},
                           {"case", moments::to_string(rep.theory.which)}};
    if (rep.theory.sigma1) {
        theory["sigma1"] = rep.theory.sigma1->str();
        theory["sigma2"] = rep.theory.sigma2->str();
        theory["sigma3"] = rep.theory.sigma3->str();
    }
    doc["theory"] = theory;
    const auto z = moments::optimal_Z(cap, cfg.g);
    doc["optimal_Z"] = {{"X", cap}, {"Z", z.Z}, {"balance_ratio", static_cast<double>(z.ratio)}};
    if (cfg.g == 3 && cap >= 100) {
        const auto dh = moments::dh_average(table, cap, column);
        doc["dh_average"] = {{"X", cap}, {"value", dh.value}, {"count", dh.count}};
    }
    emit(doc, cfg, "moments_g" + std::to_string(cfg.g) + ".json");
    return 0;
}

int cmd_verify(const Config& cfg) {
    int failed = 0;
    ordered_json results = ordered_json::array();
    hgpart::verify::run_all({.quick = cfg.quick, .jobs = cfg.jobs}, [&](const hgpart::verify::Result& r) {
        std::cout << hgpart::verify::format(r) << std::endl;
        if (!r.passed) ++failed;
        results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    });
    std::cout << (hgpart::verify::kCriteria - failed) << "/" << hgpart::verify::kCriteria << " criteria passed\n";
    if (!cfg.output.empty()) {
        std::filesystem::create_directories(cfg.output);
        ordered_json doc = meta("verify", {{"quick", cfg.quick}, {"jobs", cfg.jobs}});
        doc["results"] = results;
        std::ofstream(std::filesystem::path(cfg.output) / "verify.json") << doc.dump(2) << "\n";
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class groups, g-torsion and the counting quantities behind moment bounds for h_g(-d)"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--output", cfg.output, "Directory for artifacts");
    app.add_option("--jobs", cfg.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    auto* classgroup = app.add_subcommand("classgroup", "Class number, elementary divisors and g-parts of Q(sqrt(-d))");
    classgroup->add_option("--d", cfg.d, "Square-free d >= 1")->required();
    classgroup->add_option("--g", cfg.g_list, "Odd primes g")->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "Table of h and g-parts for square-free d in [from, to)");
    sweep->add_option("--from", cfg.from, "First d")->required();
    sweep->add_option("--to", cfg.to, "End of range (exclusive)")->required();
    sweep->add_option("--g", cfg.g_list, "Odd primes g")->delimiter(',');

    auto* rep = app.add_subcommand("repcount", "S_g(d; Z) with every witness (p, p', u, v)");
    rep->add_option("--d", cfg.d, "Square-free d")->required();
    rep->add_option("--Z", cfg.Z, "Window [Z, 2Z)")->required();
    rep->add_option("--g", cfg.g, "Odd prime g")->required();
    rep->add_option("--pairs", cfg.pairs, "ordered or unordered");

    auto* tg = app.add_subcommand("tg", "T_g over [X, 2X) with the pairwise cross-check");
    tg->add_option("--X", cfg.X, "X")->required();
    tg->add_option("--Z", cfg.Z, "Z")->required();
    tg->add_option("--g", cfg.g, "Odd prime g");
    tg->add_option("--budget", cfg.budget, "Work budget in units (0 = unlimited)");

    auto* lat = app.add_subcommand("lattice", "Reduction, successive minima and disc point count");
    lat->add_option("--ell", cfg.ell, "Modulus of w2 = b w1 (mod ell)");
    lat->add_option("--b", cfg.b, "Residue b");
    lat->add_option("--basis", cfg.basis, "x1,y1,x2,y2 instead of a congruence")->delimiter(',');
    lat->add_option("--radius", cfg.radius, "Radius, integer or p/q");
    lat->add_option("--budget", cfg.budget, "Work budget in units (0 = unlimited)");

    auto* mom = app.add_subcommand("moments", "Moment sums, fitted and theoretical exponents");
    mom->add_option("--g", cfg.g, "Odd prime g");
    mom->add_option("--k", cfg.k, "Moment k, integer or p/q");
    mom->add_option("--grid", cfg.grid, "X values, default 10^3 .. 10^6")->delimiter(',');
    mom->add_option("--column", cfg.column, "torsion or sylow");
    mom->add_option("--mode", cfg.mode, "squarefree or fundamental");
    mom->add_option("--sweep-csv", cfg.sweep_csv, "Persist and resume the sweep table here");

    auto* ver = app.add_subcommand("verify", "Run every acceptance criterion");
    ver->add_flag("--quick", cfg.quick, "Reduced scale for the slow criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classgroup) return cmd_classgroup(cfg);
        if (*sweep) return cmd_sweep(cfg);
        if (*rep) return cmd_repcount(cfg);
        if (*tg) return cmd_tg(cfg);
        if (*lat) return cmd_lattice(cfg);
        if (*mom) return cmd_moments(cfg);
        if (*ver) return cmd_verify(cfg);
    } catch (const BudgetExceeded& e) {
        std::cerr << "work budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
