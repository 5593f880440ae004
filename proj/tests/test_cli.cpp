#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "muskat/run.hpp"

using namespace muskat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("muskat_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string minimal_config(const std::string& output_dir) {
    return "model = darcy2d\n"
           "nu = 0.1\n"
           "resolution.n = 32\n"
           "time.dt = 0.01\n"
           "time.t_end = 0.1\n"
           "initial.mode = 1 0.1 0\n"
           "output_dir = " +
           output_dir + "\n";
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config parses with defaults filled") {
    const RunConfig cfg = parse_config(minimal_config("out"));
    CHECK(cfg.model == Model::darcy2d);
    CHECK(cfg.nu == 0.1);
    CHECK(cfg.strip_depth == 18.0);
    CHECK(cfg.strip_panels == 12);
    CHECK(cfg.strip_nodes == 8);
    CHECK(cfg.scheme == Scheme::if_rk2);
    CHECK(cfg.snapshot_stride == 10);
    REQUIRE(cfg.modes.size() == 1);
    CHECK(cfg.modes[0].k[0] == 1);
    CHECK(cfg.modes[0].amplitude == 0.1);
}

TEST_CASE("parse errors name the offending key") {
    SUBCASE("unknown model") {
        try {
            parse_config("model = darcy4d\nresolution.n = 32\ntime.dt = 0.1\ntime.t_end = 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.key() == "model");
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("negative dt") {
        try {
            parse_config("model = darcy2d\nresolution.n = 32\ntime.dt = -0.1\ntime.t_end = 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.key() == "time.dt");
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_config(minimal_config("out") + "mystery = 1\n"), ParseError);
    }
    SUBCASE("missing required key") {
        CHECK_THROWS_AS(parse_config("model = darcy2d\n"), ParseError);
    }
}

TEST_CASE("parse rejects structurally invalid combinations") {
    SUBCASE("n2 on a one-dimensional model") {
        CHECK_THROWS_AS(parse_config(minimal_config("out") + "resolution.n2 = 16\n"),
                        ParseError);
    }
    SUBCASE("modes and file together") {
        CHECK_THROWS_AS(parse_config(minimal_config("out") + "initial.file = x.txt\n"),
                        ParseError);
    }
    SUBCASE("short mode line") {
        CHECK_THROWS_AS(
            parse_config("model = darcy2d\nresolution.n = 32\ntime.dt = 0.1\n"
                         "time.t_end = 1\ninitial.mode = 1 0.1\n"),
            ParseError);
    }
    SUBCASE("dt larger than t_end") {
        CHECK_THROWS_AS(parse_config("model = darcy2d\nresolution.n = 32\n"
                                     "time.dt = 2\ntime.t_end = 1\n"),
                        ParseError);
    }
}

TEST_CASE("config round-trips through its canonical text") {
    RunConfig cfg = parse_config(minimal_config("somewhere/else"));
    cfg.scheme = Scheme::if_rk4;
    cfg.lambda = 0.25;
    const RunConfig back = parse_config(config_text(cfg));
    CHECK(back == cfg);
}

TEST_CASE("build_initial: modes, zero field, band errors") {
    RunConfig cfg = parse_config(minimal_config("out"));
    SUBCASE("one cosine mode") {
        const InitialState s = build_initial(cfg);
        const PeriodicGrid g = cfg.make_grid();
        double worst = 0.0;
        for (int j = 0; j < 32; ++j)
            worst = std::max(worst, std::abs(s.f.values[static_cast<std::size_t>(j)] -
                                             0.1 * std::cos(g.point(0, j))));
        CHECK(worst < 1e-15);
    }
    SUBCASE("no modes means the zero field") {
        cfg.modes.clear();
        const InitialState s = build_initial(cfg);
        CHECK(max_abs(s.f) == 0.0);
    }
    SUBCASE("mode beyond the band is rejected") {
        cfg.modes[0].k[0] = 17;  // n/2 + 1 on n = 32
        CHECK_THROWS_AS(build_initial(cfg), InvalidInputError);
    }
    SUBCASE("constant mode is rejected") {
        cfg.modes[0].k[0] = 0;
        CHECK_THROWS_AS(build_initial(cfg), InvalidInputError);
    }
}

TEST_CASE("build_initial from a nodal-values file") {
    const fs::path dir = fresh_dir("initfile");
    const fs::path data = dir / "values.txt";
    {
        std::ofstream out(data);
        for (int j = 0; j < 32; ++j) out << 0.5 + std::sin(2.0 * M_PI * j / 32.0) << "\n";
    }
    RunConfig cfg = parse_config(minimal_config((dir / "out").string()));
    cfg.modes.clear();
    cfg.initial_file = data.string();
    const InitialState s = build_initial(cfg);
    CHECK(std::abs(mean(s.f)) < 1e-15);  // mean projected out

    SUBCASE("wrong length fails") {
        std::ofstream out(data, std::ios::app);
        out << "0.25\n";
        out.close();
        CHECK_THROWS_AS(build_initial(cfg), InvalidInputError);
    }
    SUBCASE("non-finite entries fail") {
        std::ofstream out(data);
        for (int j = 0; j < 31; ++j) out << "0.5\n";
        out << "nan\n";
        out.close();
        CHECK_THROWS_AS(build_initial(cfg), InvalidInputError);
    }
}

TEST_CASE("linear run decays exactly in the written diagnostics") {
    const fs::path dir = fresh_dir("linear");
    RunConfig cfg = parse_config(minimal_config((dir / "out").string()));
    cfg.model = Model::linear2d;
    cfg.nu = 0.1;
    cfg.dt = 0.001;
    cfg.t_end = 1.0;
    REQUIRE(run_simulation(cfg) == exit_ok);

    const auto rows = read_csv(dir / "out" / "diagnostics.csv");
    REQUIRE(!rows.empty());
    const double l2_initial = rows.front()[2];
    const double l2_final = rows.back()[2];
    CHECK(rows.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2_final == doctest::Approx(std::exp(-(1.0 + 0.1)) * l2_initial).epsilon(1e-10));
    // Monotone decay all along.
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] < rows[i - 1][2]);
}

TEST_CASE("forchheimer with lambda = 0 reproduces darcy snapshots") {
    const fs::path dir = fresh_dir("lambda0");
    RunConfig darcy = parse_config(minimal_config((dir / "darcy").string()));
    RunConfig forch = parse_config(minimal_config((dir / "forch").string()));
    forch.model = Model::forchheimer2d;
    forch.lambda = 0.0;
    REQUIRE(run_simulation(darcy) == exit_ok);
    REQUIRE(run_simulation(forch) == exit_ok);

    const auto a = read_csv(dir / "darcy" / "snap_000001.csv");
    const auto b = read_csv(dir / "forch" / "snap_000001.csv");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i][1] - b[i][1]) < 1e-12);
}

TEST_CASE("spectrum file records the transform convention") {
    const fs::path dir = fresh_dir("spectrum");
    RunConfig cfg = parse_config(minimal_config((dir / "out").string()));
    cfg.t_end = 0.01;
    cfg.dt = 0.01;
    REQUIRE(run_simulation(cfg) == exit_ok);

    const auto rows = read_csv(dir / "out" / "spectrum_000000.csv");
    REQUIRE(rows.size() == 32);
    for (const auto& row : rows) {
        const int k = static_cast<int>(row[0]);
        if (k == 1 || k == -1) {
            CHECK(row[1] == doctest::Approx(0.05).epsilon(1e-12));
            CHECK(std::abs(row[2]) < 1e-15);
        } else {
            CHECK(std::abs(row[1]) < 1e-15);
            CHECK(std::abs(row[2]) < 1e-15);
        }
    }
}

TEST_CASE("rerunning a config writes byte-identical outputs") {
    const fs::path dir = fresh_dir("rerun");
    RunConfig one = parse_config(minimal_config((dir / "one").string()));
    RunConfig two = parse_config(minimal_config((dir / "two").string()));
    REQUIRE(run_simulation(one) == exit_ok);
    REQUIRE(run_simulation(two) == exit_ok);
    for (const char* name : {"diagnostics.csv", "snap_000000.csv", "snap_000001.csv",
                             "spectrum_000001.csv"}) {
        CHECK(slurp(dir / "one" / name) == slurp(dir / "two" / name));
    }
}

TEST_CASE("manifest lists existing files with matching row counts") {
    const fs::path dir = fresh_dir("manifest");
    RunConfig cfg = parse_config(minimal_config((dir / "out").string()));
    REQUIRE(run_simulation(cfg) == exit_ok);

    const nlohmann::json manifest = nlohmann::json::parse(slurp(dir / "out" / "run.json"));
    CHECK(manifest.at("status") == "completed");
    CHECK(manifest.at("partial") == false);

    // The resolved config embedded in the manifest re-parses to an equal
    // RunConfig (round trip through the run record).
    CHECK(parse_config(manifest.at("config_text").get<std::string>()) == cfg);

    // Every listed file exists and holds the recorded number of data rows.
    for (const auto& entry : manifest.at("files")) {
        const fs::path p = dir / "out" / entry.at("name").get<std::string>();
        REQUIRE(fs::exists(p));
        CHECK(read_csv(p).size() == entry.at("rows").get<std::size_t>());
    }
}

TEST_CASE("unwritable output directory exits with the i/o code") {
    RunConfig cfg = parse_config(minimal_config("/proc/muskat_cannot_write_here"));
    CHECK(run_simulation(cfg) == exit_io);
}

TEST_CASE("blow-up exits with code 4 and keeps partial outputs") {
    const fs::path dir = fresh_dir("blowup");
    RunConfig cfg = parse_config(minimal_config((dir / "out").string()));
    cfg.modes[0].amplitude = 60.0;
    cfg.modes.push_back(ModeSpec{{2, 0}, 45.0, 0.0});
    cfg.dt = 0.5;
    cfg.t_end = 20.0;
    cfg.snapshot_stride = 1;
    CHECK(run_simulation(cfg) == exit_blowup);
    CHECK(fs::exists(dir / "out" / "diagnostics.csv"));
    CHECK(slurp(dir / "out" / "run.json").find("\"status\": \"blowup\"") != std::string::npos);
}

TEST_CASE("simulate binary maps failures to exit codes") {
    const fs::path dir = fresh_dir("binary");
    const auto run_cmd = [&](const std::string& args) {
        const std::string cmd = std::string(SIMULATE_BIN) + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    SUBCASE("successful run") {
        const fs::path conf = dir / "good.conf";
        std::ofstream(conf) << minimal_config((dir / "out").string());
        CHECK(run_cmd(conf.string()) == exit_ok);
        CHECK(fs::exists(dir / "out" / "run.json"));
    }
    SUBCASE("missing config file") {
        CHECK(run_cmd((dir / "nope.conf").string()) == exit_io);
    }
    SUBCASE("malformed config") {
        const fs::path conf = dir / "bad.conf";
        std::ofstream(conf) << "model = darcy4d\n";
        CHECK(run_cmd(conf.string()) == exit_parse);
    }
    SUBCASE("flag overrides apply") {
        const fs::path conf = dir / "override.conf";
        std::ofstream(conf) << minimal_config((dir / "ignored").string());
        CHECK(run_cmd(conf.string() + " --output-dir " + (dir / "flagged").string() +
                      " --t-end 0.05 --resolution 16") == exit_ok);
        CHECK(fs::exists(dir / "flagged" / "run.json"));
        const auto rows = read_csv(dir / "flagged" / "diagnostics.csv");
        CHECK(rows.back()[0] == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(read_csv(dir / "flagged" / "snap_000000.csv").size() == 16);
    }
    SUBCASE("separate processes produce byte-identical outputs") {
        const fs::path conf = dir / "repeat.conf";
        std::ofstream(conf) << minimal_config((dir / "ignored").string());
        REQUIRE(run_cmd(conf.string() + " --output-dir " + (dir / "r1").string()) == exit_ok);
        REQUIRE(run_cmd(conf.string() + " --output-dir " + (dir / "r2").string()) == exit_ok);
        for (const char* name : {"diagnostics.csv", "snap_000001.csv", "spectrum_000001.csv"})
            CHECK(slurp(dir / "r1" / name) == slurp(dir / "r2" / name));
    }
}

}  // TEST_SUITE
