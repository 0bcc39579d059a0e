#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "tplkit/bench.hpp"
#include "tplkit/checker.hpp"
#include "tplkit/placer.hpp"

using namespace tplkit;

namespace {
const TechParams kTech;

ColoredLibrary bench_colored() { return precolor_library(bench_library(kTech, true), kTech, 1); }

Design one_row(const ColoredLibrary& lib, std::vector<Instance> insts) {
    Design d;
    d.tech = kTech;
    d.rows.push_back({0, 1000, {}});
    for (auto& i : insts) d.rows[0].insts.push_back(i.id);
    d.instances = std::move(insts);
    return d;
}
} // namespace

TEST_CASE("single colored cell: zero conflicts, stitches match the solution") {
    auto lib = bench_colored();
    int stitchy = lib.cell_index("stitchy_10");
    auto& sols = lib.pre[stitchy].at(Orientation::N).solutions;
    for (int s = 0; s < (int)sols.size(); ++s) {
        Design d = one_row(lib, {{0, stitchy, 0, 0, Orientation::N, s}});
        ConflictReport rep = check_design(d, lib);
        CHECK(rep.total() == 0);
        CHECK(rep.stitch_total == sols[s].stitch_count);
    }
}

TEST_CASE("uncolored instance is rejected") {
    auto lib = bench_colored();
    Design d = one_row(lib, {{0, 0, 0, 0, Orientation::N, -1}});
    CHECK_THROWS(check_design(d, lib));
}

TEST_CASE("checker verdict is the inverse of the LUT at gap zero") {
    auto lib = bench_colored();
    auto lut = build_lut(lib);
    for (int a = 0; a < lut.num_variants(); ++a)
        for (int b = 0; b < lut.num_variants(); ++b) {
            auto& va = lut.variants[a];
            auto& vb = lut.variants[b];
            Design d = one_row(lib, {{0, va.cell, 0, 0, va.o, va.sol},
                                     {1, vb.cell, 0, lib.masters[va.cell].width_sites, vb.o,
                                      vb.sol}});
            bool conflict_free = check_design(d, lib).total() == 0;
            CHECK(conflict_free == (lut.spacing_of(a, b) == 0));
        }
}

TEST_CASE("cross-row conflicts are impossible under row independence") {
    auto lib = bench_colored();
    int hot = lib.cell_index("hot_6");
    Unit pitch = 40 + effective_drow(kTech);
    Design d;
    d.tech = kTech;
    for (int r = 0; r < 3; ++r) {
        d.rows.push_back({Unit(r) * pitch, 1000, {r}});
        d.instances.push_back({r, hot, r, 0, Orientation::N, 0});
    }
    ConflictReport rep = check_design(d, lib);
    CHECK(rep.cross_row == 0);
    CHECK(rep.total() == 0);
}

TEST_CASE("mask feature counts cover every fragment") {
    auto lib = bench_colored();
    Design d = one_row(lib, {{0, 0, 0, 0, Orientation::N, 0}});
    ConflictReport rep = check_design(d, lib);
    size_t frags = lib.pre[0].at(Orientation::N).cg.vertices.size();
    CHECK(size_t(rep.mask_features[0] + rep.mask_features[1] + rep.mask_features[2]) == frags);
}

TEST_CASE("post-decomposition baseline on a sparse design is clean") {
    auto lib = bench_colored();
    int clean = lib.cell_index("clean_4");
    Design d = one_row(lib, {{0, clean, 0, 0, Orientation::N, -1},
                             {1, clean, 0, 10, Orientation::N, -1}});
    ConflictReport rep = post_decomposition_baseline(d, lib, 1);
    CHECK(rep.total() == 0);
}

TEST_CASE("post-decomposition baseline stumbles where the placer does not") {
    BenchSpec spec;
    spec.seed = 5;
    spec.num_rows = 4;
    spec.sites_per_row = 80;
    spec.utilization = 0.9;
    auto bench = gen_bench(spec, kTech);
    auto lib = precolor_library(bench.masters, kTech, 1);
    auto lut = build_lut(lib);

    ConflictReport base = post_decomposition_baseline(bench.design, lib, 1);
    CHECK(base.total() > 0);
    CHECK(base.stitch_total <= (int)bench.design.instances.size() * 1);

    Design placed = bench.design;
    PlacerConfig cfg;
    detailed_place(placed, lib, lut, cfg);
    CHECK(check_design(placed, lib).total() == 0);
}

TEST_CASE("baseline and checker are deterministic") {
    BenchSpec spec;
    spec.seed = 6;
    spec.num_rows = 3;
    spec.sites_per_row = 60;
    spec.utilization = 0.8;
    auto bench = gen_bench(spec, kTech);
    auto lib = precolor_library(bench.masters, kTech, 1);
    auto a = post_decomposition_baseline(bench.design, lib, 1);
    auto b = post_decomposition_baseline(bench.design, lib, 1);
    CHECK(a.total() == b.total());
    CHECK(a.stitch_total == b.stitch_total);
    std::ostringstream ra, rb;
    write_report(ra, a);
    write_report(rb, b);
    CHECK(ra.str() == rb.str());
}

TEST_CASE("report format") {
    ConflictReport rep;
    rep.per_row = 2;
    rep.cross_row = 0;
    rep.stitch_total = 3;
    rep.conflicts.push_back({0, 1, 2, 3, 2, 16, false});
    std::ostringstream out;
    write_report(out, rep);
    std::string s = out.str();
    CHECK(s.find("conflicts=2\n") != std::string::npos);
    CHECK(s.find("stitches=3\n") != std::string::npos);
    CHECK(s.find("CONFLICT inst0.f1 inst2.f3 color=2 gap2=16\n") != std::string::npos);
}
