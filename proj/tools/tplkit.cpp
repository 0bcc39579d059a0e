// tplkit: TPL-aware standard-cell pre-coloring, placement and verification.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "tplkit/bench.hpp"
#include "tplkit/placer.hpp"
#include "tplkit/svg.hpp"

using namespace tplkit;

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

ColoredLibrary precolor_library_mt(std::vector<CellMaster> masters, const TechParams& t,
                                   int maxS, int threads) {
    ColoredLibrary lib;
    lib.tech = t;
    lib.masters = std::move(masters);
    lib.pre.resize(lib.masters.size());
    parallel_for((int)lib.masters.size(), threads,
                 [&](int i) { lib.pre[i] = precolor_cell(lib.masters[i], t, maxS); });
    return lib;
}

DecomposabilityLUT build_lut_mt(const ColoredLibrary& lib, int threads) {
    DecomposabilityLUT lut;
    lut.d_min = derive_dmin(lib.tech);
    lut.site_width = lib.tech.site_width;
    for (int c = 0; c < (int)lib.masters.size(); ++c) {
        lut.var_base.push_back(lut.num_variants());
        for (Orientation o : {Orientation::N, Orientation::FN}) {
            auto& sols = lib.pre[c].at(o).solutions;
            for (int s = 0; s < (int)sols.size(); ++s)
                lut.variants.push_back({c, o, s, sols[s].stitch_count});
        }
    }
    int nv = lut.num_variants();
    lut.spacing.assign(nv, std::vector<int>(nv, 0));
    parallel_for(nv, threads, [&](int a) {
        auto& va = lut.variants[a];
        CellMaster left = oriented(lib.masters[va.cell], va.o, lib.tech);
        for (int b = 0; b < nv; ++b) {
            auto& vb = lut.variants[b];
            lut.spacing[a][b] = pair_spacing(
                left, lib.pre[va.cell].at(va.o).solutions[va.sol],
                oriented(lib.masters[vb.cell], vb.o, lib.tech),
                lib.pre[vb.cell].at(vb.o).solutions[vb.sol], lib.tech);
        }
    });
    return lut;
}

// The design file carries TECH; scan for it so the library can be parsed
// with matching parameters.
TechParams tech_from_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    TechParams t;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string kw;
        if (ss >> kw && kw == "TECH") {
            ss >> t.w_min >> t.s_min >> t.site_width;
            break;
        }
    }
    return t;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

struct CommonOpts {
    std::string lib_path, design_path;
    int max_stitch = 1;
    int threads = 1;
    Cost alpha = 10;
};

struct Loaded {
    TechParams tech;
    ColoredLibrary lib;
    DecomposabilityLUT lut;
    Design design;
};

Loaded load(const CommonOpts& o) {
    Loaded L;
    L.tech = tech_from_design(o.design_path);
    auto masters = parse_library(o.lib_path, L.tech);
    L.lib = precolor_library_mt(std::move(masters), L.tech, o.max_stitch, o.threads);
    L.lut = build_lut_mt(L.lib, o.threads);
    L.design = parse_design(o.design_path, L.lib.masters);
    return L;
}

void emit_engine(std::ostream& out, const std::string& tag, const Design& placed,
                 const ColoredLibrary& lib, Unit hpwl_in, Cost alpha, double cpu,
                 const PlaceStats* stats) {
    ConflictReport rep = check_design(placed, lib);
    Unit h = hpwl(placed, lib.masters);
    char wld[32];
    std::snprintf(wld, sizeof wld, "%.4f",
                  hpwl_in > 0 ? 100.0 * double(h - hpwl_in) / double(hpwl_in) : 0.0);
    out << tag << "_cn=" << rep.total() << '\n'
        << tag << "_st=" << rep.stitch_total << '\n'
        << tag << "_hpwl=" << h << '\n'
        << tag << "_obj=" << objective(placed, lib, alpha) << '\n'
        << tag << "_wld=" << wld << '\n';
    std::snprintf(wld, sizeof wld, "%.4f", cpu);
    out << tag << "_cpu=" << wld << '\n';
    if (stats)
        out << tag << "_relax=" << stats->relax << '\n'
            << tag << "_relax_color=" << stats->relax_color << '\n'
            << tag << "_relax_place=" << stats->relax_place << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triple-patterning standard-cell toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    TechParams tech;
    std::string out_path, place_path, engine_name = "two-stage";
    int sweeps = 5;
    double epsilon = 0.005;

    auto add_common = [&](CLI::App* c, bool with_design) {
        c->add_option("--lib", opt.lib_path, "cell library file")->required();
        if (with_design) c->add_option("--design", opt.design_path, "design file")->required();
        c->add_option("--max-stitch", opt.max_stitch, "per-cell stitch budget");
        c->add_option("--threads", opt.threads, "worker threads for library prep");
        return c;
    };
    auto add_tech = [&](CLI::App* c) {
        c->add_option("--wmin", tech.w_min, "minimum feature width");
        c->add_option("--smin", tech.s_min, "minimum feature spacing");
        c->add_option("--site", tech.site_width, "site width in units");
    };

    auto* c_pre = add_common(app.add_subcommand("precolor", "enumerate cell colorings"), false);
    c_pre->add_option("-o,--out", out_path, "solutions output file")->required();
    add_tech(c_pre);

    auto* c_lut = add_common(app.add_subcommand("lut", "build the pair-spacing table"), false);
    c_lut->add_option("-o,--out", out_path, "LUT output file")->required();
    add_tech(c_lut);

    auto* c_place = add_common(app.add_subcommand("place", "detailed placement"), true);
    c_place->add_option("-o,--out", out_path, "placement output file")->required();
    c_place->add_option("--engine", engine_name, "two-stage | optimal")
        ->check(CLI::IsMember({"two-stage", "optimal"}));
    c_place->add_option("--alpha", opt.alpha, "stitch weight");
    c_place->add_option("--sweeps", sweeps, "max placement sweeps");
    c_place->add_option("--epsilon", epsilon, "relative improvement cutoff");

    auto* c_check = add_common(app.add_subcommand("check", "verify a colored placement"), true);
    c_check->add_option("--place", place_path, "placement file")->required();
    c_check->add_option("-o,--out", out_path, "report file (default stdout)");

    auto* c_cmp = add_common(app.add_subcommand("compare", "run all engines and baselines"), true);
    c_cmp->add_option("--alpha", opt.alpha, "stitch weight");
    c_cmp->add_option("--sweeps", sweeps, "max placement sweeps");
    c_cmp->add_option("-o,--out", out_path, "report file (default stdout)");

    BenchSpec spec;
    std::string out_lib;
    auto* c_gen = app.add_subcommand("gen", "generate a synthetic benchmark");
    c_gen->add_option("--seed", spec.seed, "RNG seed");
    c_gen->add_option("--rows", spec.num_rows, "row count");
    c_gen->add_option("--sites", spec.sites_per_row, "sites per row");
    c_gen->add_option("--util", spec.utilization, "target utilization");
    c_gen->add_option("--hot-fraction", spec.hot_fraction, "share of boundary-hot cells");
    c_gen->add_option("--nets", spec.num_nets, "net count (-1 = auto)");
    c_gen->add_option("--max-pins", spec.max_pins, "max pins per net");
    c_gen->add_option("--out-design", out_path, "design output file")->required();
    c_gen->add_option("--out-lib", out_lib, "library output file")->required();
    add_tech(c_gen);

    auto* c_render = add_common(app.add_subcommand("render", "draw a colored placement"), true);
    c_render->add_option("--place", place_path, "placement file")->required();
    c_render->add_option("-o,--out", out_path, "SVG output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_pre->parsed()) {
            auto masters = parse_library(opt.lib_path, tech);
            auto lib = precolor_library_mt(std::move(masters), tech, opt.max_stitch, opt.threads);
            auto out = open_out(out_path);
            for (size_t i = 0; i < lib.masters.size(); ++i) {
                out << "CELL " << lib.masters[i].name << '\n';
                write_solutions(out, lib.pre[i]);
            }
        } else if (c_lut->parsed()) {
            auto masters = parse_library(opt.lib_path, tech);
            auto lib = precolor_library_mt(std::move(masters), tech, opt.max_stitch, opt.threads);
            auto lut = build_lut_mt(lib, opt.threads);
            auto out = open_out(out_path);
            write_lut(out, lut, lib);
        } else if (c_place->parsed()) {
            Loaded L = load(opt);
            initial_place(L.design, L.lib.masters);
            PlacerConfig cfg;
            cfg.alpha = opt.alpha;
            cfg.max_sweeps = sweeps;
            cfg.epsilon_rel = epsilon;
            cfg.engine = engine_name == "optimal" ? Engine::Optimal : Engine::TwoStage;
            Unit hpwl_in = hpwl(L.design, L.lib.masters);
            double t0 = now_s();
            PlaceStats stats = detailed_place(L.design, L.lib, L.lut, cfg);
            double cpu = now_s() - t0;
            auto out = open_out(out_path);
            write_placement(out, L.design);
            emit_engine(std::cout, engine_name == "optimal" ? "optimal" : "twostage", L.design,
                        L.lib, hpwl_in, cfg.alpha, cpu, &stats);
            std::cout << "sweeps=" << stats.sweeps << '\n';
        } else if (c_check->parsed()) {
            Loaded L = load(opt);
            std::ifstream pin(place_path);
            if (!pin) throw ParseError("cannot open " + place_path);
            read_placement(pin, L.design);
            ConflictReport rep = check_design(L.design, L.lib);
            if (out_path.empty()) {
                write_report(std::cout, rep);
            } else {
                auto out = open_out(out_path);
                write_report(out, rep);
            }
            return rep.total() > 0 ? 1 : 0;
        } else if (c_cmp->parsed()) {
            Loaded L = load(opt);
            initial_place(L.design, L.lib.masters);
            Unit hpwl_in = hpwl(L.design, L.lib.masters);
            std::ofstream file;
            if (!out_path.empty()) file = open_out(out_path);
            std::ostream& out = out_path.empty() ? std::cout : file;
            out << "hpwl_in=" << hpwl_in << '\n';

            double t0 = now_s();
            ConflictReport pd = post_decomposition_baseline(L.design, L.lib, opt.max_stitch);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", now_s() - t0);
            out << "postdec_cn=" << pd.total() << '\n'
                << "postdec_st=" << pd.stitch_total << '\n'
                << "postdec_wld=0.0000\n"
                << "postdec_cpu=" << buf << '\n';

            t0 = now_s();
            GreedyResult gr = greedy_baseline(L.design, L.lib, L.lut, opt.alpha);
            double gcpu = now_s() - t0;
            out << "greedy_feasible=" << (gr.feasible ? 1 : 0) << '\n';
            if (gr.feasible)
                emit_engine(out, "greedy", gr.design, L.lib, hpwl_in, opt.alpha, gcpu, nullptr);
            else
                out << "greedy_message=" << gr.message << '\n';

            for (Engine eng : {Engine::Optimal, Engine::TwoStage}) {
                Design d = L.design;
                PlacerConfig cfg;
                cfg.alpha = opt.alpha;
                cfg.max_sweeps = sweeps;
                cfg.engine = eng;
                t0 = now_s();
                PlaceStats stats = detailed_place(d, L.lib, L.lut, cfg);
                double cpu = now_s() - t0;
                emit_engine(out, eng == Engine::Optimal ? "optimal" : "twostage", d, L.lib,
                            hpwl_in, cfg.alpha, cpu, &stats);
            }
        } else if (c_gen->parsed()) {
            BenchOutput bench = gen_bench(spec, tech);
            auto dout = open_out(out_path);
            write_design(dout, bench.design, bench.masters);
            auto lout = open_out(out_lib);
            write_library(lout, bench.masters);
        } else if (c_render->parsed()) {
            Loaded L = load(opt);
            std::ifstream pin(place_path);
            if (!pin) throw ParseError("cannot open " + place_path);
            read_placement(pin, L.design);
            ConflictReport rep = check_design(L.design, L.lib);
            auto out = open_out(out_path);
            render_svg(out, L.design, L.lib, &rep);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PlaceError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const UnsolvableRowError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
