#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path log = fs::temp_directory_path() / ("cfl_cli_test_" + std::to_string(counter++) + ".log");
    std::string cmd = std::string(CFL_BIN) + " " + args + " > " + log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(log);
    return {code, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("catalog lists nine families, also as JSON") {
    auto r = run_cli("catalog");
    CHECK(r.exit_code == 0);
    for (const char* fam :
         {"gca-scaling", "gca-quartic-1d", "gca-continuity-branch-1d", "gca-acceleration",
          "gca-conformal-deformed", "gca-acceleration-deformed", "lifshitz", "viscous-gca-integer",
          "viscous-gca-half-integer"})
        CHECK_MESSAGE(r.output.find(fam) != std::string::npos, fam);

    auto rj = run_cli("catalog --json");
    CHECK(rj.exit_code == 0);
    auto j = nlohmann::json::parse(rj.output);
    CHECK(j.size() == 9);

    auto rf = run_cli("catalog --family gca-scaling");
    CHECK(rf.exit_code == 0);
    CHECK(rf.output.find("(1+4k)/2") != std::string::npos);

    CHECK(run_cli("catalog --family no-such-family").exit_code == 2);
}

TEST_CASE("verify: pass, tolerance failure and invalid input exit codes") {
    auto out = fresh_dir("cfl_verify_pass");
    auto r = run_cli("verify --family gca-scaling --ell 5/2 --d 1 --a 0.5 --c 0.1 "
                     "--grid t=2:6:10,x=-10:10:20 --tol 1e-6 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(fs::exists(out / "continuity.csv"));
    CHECK(fs::exists(out / "euler-galilei.csv"));
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "run.manifest"));
    auto report = nlohmann::json::parse(slurp(out / "report.json"));
    CHECK(report["pass"] == true);

    auto tight = fresh_dir("cfl_verify_tight");
    auto r1 = run_cli("verify --family gca-scaling --ell 5/2 --d 1 --a 0.5 --c 0.1 "
                      "--grid t=2:6:10,x=-10:10:20 --tol 1e-18 --out " + tight.string());
    CHECK(r1.exit_code == 1);
    CHECK(r1.output.find("FAIL") != std::string::npos);

    auto bad = fresh_dir("cfl_verify_bad");
    auto r2 = run_cli("verify --family lifshitz --z 0.5 --d 2 --out " + bad.string());
    CHECK(r2.exit_code == 2);
    CHECK(r2.output.find("dynamical exponent out of range") != std::string::npos);
    CHECK(run_cli("verify --family gca-scaling --ell 3/2 --out " + bad.string()).exit_code == 2);
    CHECK(run_cli("verify --family gca-scaling --ell 0.5 --out " + bad.string()).exit_code == 2);
}

TEST_CASE("verify runs are byte-identical given the same config and seed") {
    auto o1 = fresh_dir("cfl_repro_1");
    auto o2 = fresh_dir("cfl_repro_2");
    std::string args = "verify --family lifshitz --z 3/5 --d 2 --a 0.5 --c 0.1 "
                       "--grid t=2:5:5,x=-4:4:40 --samples 600 --seed 42 --tol 1e-6 --out ";
    CHECK(run_cli(args + o1.string()).exit_code == 0);
    CHECK(run_cli(args + o2.string()).exit_code == 0);
    for (const char* f : {"continuity.csv", "euler-lifshitz.csv", "report.json"})
        CHECK_MESSAGE(slurp(o1 / f) == slurp(o2 / f), f);
    // manifests only differ in the --out path recorded in the command line
    auto strip = [](std::string s, const std::string& needle) {
        auto pos = s.find(needle);
        while (pos != std::string::npos) {
            s.erase(pos, needle.size());
            pos = s.find(needle);
        }
        return s;
    };
    CHECK(strip(slurp(o1 / "run.manifest"), o1.string()) ==
          strip(slurp(o2 / "run.manifest"), o2.string()));
}

TEST_CASE("verify with a worker pool gives identical numbers") {
    auto o1 = fresh_dir("cfl_workers_1");
    auto o2 = fresh_dir("cfl_workers_4");
    std::string args = "verify --family gca-scaling --ell 9/2 --d 2 --a 0.5 --c 0.1 "
                       "--grid t=2:5:5,x=-6:6:12 --tol 1e-6 --out ";
    CHECK(run_cli(args + o1.string()).exit_code == 0);
    CHECK(run_cli("--workers 4 " + args + o2.string()).exit_code == 0);
    CHECK(slurp(o1 / "continuity.csv") == slurp(o2 / "continuity.csv"));
}

TEST_CASE("transform: closed-form check, identity reproducibility, orbit tracing") {
    auto out = fresh_dir("cfl_transform_closed");
    auto r = run_cli("transform --family gca-scaling --ell 1/2 --d 1 --a 0.5 --c 0.1 "
                     "--special-conformal 0.3 --check-closed-form --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("closed-form max deviation") != std::string::npos);
    auto report = nlohmann::json::parse(slurp(out / "report.json"));
    CHECK(report["closed_form_max_deviation"].get<double>() <= 1e-12);

    auto i1 = fresh_dir("cfl_transform_id1");
    auto i2 = fresh_dir("cfl_transform_id2");
    std::string args = "transform --family gca-scaling --ell 1 --d 2 --a 0.5 --c 0.1 "
                       "--transform '{\"sl2\":[1,0,0,1]}' --grid t=2:4:4,x=-2:2:5 --out ";
    CHECK(run_cli(args + i1.string()).exit_code == 0);
    CHECK(run_cli(args + i2.string()).exit_code == 0);
    CHECK(slurp(i1 / "fields.csv") == slurp(i2 / "fields.csv"));

    auto tr = fresh_dir("cfl_transform_trace");
    auto r2 = run_cli(
        "transform --family gca-scaling --ell 1 --d 2 --a 0.5 --c 0.1 "
        "--transform '{\"accel\":[[0,1],[0.8660254037844386,-0.5],[-0.8660254037844386,-0.5]]}' "
        "--trace 'b=(0.1,0.1)..(0.1,1.0)' --out " + tr.string());
    CHECK(r2.exit_code == 0);
    int orbit_files = 0;
    for (const auto& e : fs::directory_iterator(tr))
        if (e.path().filename().string().rfind("orbit_", 0) == 0) ++orbit_files;
    CHECK(orbit_files == 10);
    // orbit CSVs carry t,x1,x2 headers
    auto first = slurp(tr / "orbit_01.csv");
    CHECK(first.substr(0, first.find('\n')) == "t,x1,x2");

    CHECK(run_cli("transform --family gca-scaling --ell 1 --d 1 --out " + tr.string())
              .exit_code == 2);
    CHECK(run_cli("transform --family gca-scaling --ell 1 --d 1 --transform not-json --out " +
                  tr.string()).exit_code == 2);
}

TEST_CASE("figures produce the catalogued CSV sets") {
    auto f1 = fresh_dir("cfl_fig1");
    CHECK(run_cli("figures fig1 --nt 4 --nx 6 --out " + f1.string()).exit_code == 0);
    for (const char* f :
         {"fig1_ell_1_2.csv", "fig1_ell_5_2.csv", "fig1_ell_9_2.csv", "fig1_ell_13_2.csv"})
        CHECK_MESSAGE(fs::exists(f1 / f), f);
    auto body = slurp(f1 / "fig1_ell_1_2.csv");
    CHECK(body.substr(0, body.find('\n')) == "t,x,rho");

    auto f3 = fresh_dir("cfl_fig3");
    CHECK(run_cli("figures fig3 --nt 4 --mass-res 48 --out " + f3.string()).exit_code == 0);
    CHECK(fs::exists(f3 / "fig3_mass_ell_1_2.csv"));
    CHECK(fs::exists(f3 / "fig3_mass_ell_5_2.csv"));
    CHECK(fs::exists(f3 / "run.manifest"));
    auto manifest = slurp(f3 / "run.manifest");
    CHECK(manifest.find("[outputs]") != std::string::npos);
    CHECK(manifest.find("fig3_mass_ell_1_2.csv=") != std::string::npos);

    auto f2 = fresh_dir("cfl_fig2");
    CHECK(run_cli("figures fig2 --nx 5 --out " + f2.string()).exit_code == 0);
    auto flow = slurp(f2 / "fig2_flow.csv");
    CHECK(flow.substr(0, flow.find('\n')) == "x1,x2,v1,v2");

    auto f4 = fresh_dir("cfl_fig4");
    CHECK(run_cli("figures fig4 --out " + f4.string()).exit_code == 0);
    int orbits = 0;
    for (const auto& e : fs::directory_iterator(f4))
        if (e.path().filename().string().rfind("fig4_orbit_", 0) == 0) ++orbits;
    CHECK(orbits == 10);

    auto f5 = fresh_dir("cfl_fig5");
    CHECK(run_cli("figures fig5 --nt 3 --mass-res 32 --out " + f5.string()).exit_code == 0);
    int curves = 0;
    for (const auto& e : fs::directory_iterator(f5))
        if (e.path().filename().string().rfind("fig5_mass_z_", 0) == 0) ++curves;
    CHECK(curves == 3);

    CHECK(run_cli("figures fig9 --out " + f5.string()).exit_code == 2);
}

TEST_CASE("algebra command verifies relations and classifies parse errors") {
    auto r = run_cli("algebra gca --ell 9/2 --d 3 --no-jacobi");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("exact: yes") != std::string::npos);

    auto rl = run_cli("algebra lifshitz --z 7/3 --d 2");
    CHECK(rl.exit_code == 0);

    CHECK(run_cli("algebra gca --ell 2/3").exit_code == 2);
    CHECK(run_cli("algebra nonsense").exit_code == 2);

    auto out = fresh_dir("cfl_algebra_out");
    CHECK(run_cli("algebra gca --ell 5/2 --d 1 --out " + out.string()).exit_code == 0);
    auto j = nlohmann::json::parse(slurp(out / "algebra.json"));
    CHECK(j["all_match"] == true);
    CHECK(j["jacobi_zero"] == j["jacobi_triples"]);
}

TEST_CASE("config files drive a run through key=value sections") {
    auto out = fresh_dir("cfl_config_run");
    fs::path cfg = out / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "[verify]\n"
          << "family=gca-scaling\n"
          << "ell=5/2\n"
          << "d=1\n"
          << "a=0.5\n"
          << "c=0.1\n"
          << "grid=\"t=2:6:8,x=-10:10:16\"\n"
          << "tol=1e-6\n"
          << "out=" << out.string() << "\n";
    }
    auto r = run_cli("--config " + cfg.string() + " verify");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "report.json"));
}

TEST_CASE("unknown flags are parse errors (exit 2)") {
    CHECK(run_cli("verify --family gca-scaling --no-such-flag 1").exit_code == 2);
    CHECK(run_cli("not-a-command").exit_code == 2);
}
