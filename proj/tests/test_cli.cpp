// End-to-end checks of the installed subcommands: exit codes, file
// outputs, and byte-identical reruns.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eptopo/json_io.hpp"

namespace fs = std::filesystem;
using eptopo::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("eptopo_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter()
    {
        static int c = 0;
        return c;
    }
};

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(EPTOPO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& content)
{
    std::ofstream os(p);
    os << content;
}

}  // namespace

TEST_CASE("table subcommand", "[cli]")
{
    TempDir tmp;
    REQUIRE(run_cli("table --k 1 --out " + tmp.path.string()) == 0);
    CHECK(slurp(tmp.path / "table_1.csv") ==
          "r,count,linking,vorticity\n0,1,1,1\n1,2,2,0\n2,1,3,-1\n");

    REQUIRE(run_cli("table --k 2 --list-words --out " + tmp.path.string()) == 0);
    const std::string words = slurp(tmp.path / "table_2_words.csv");
    CHECK(words.find("0,abab\n") != std::string::npos);
    CHECK(words.find("4,ABAB\n") != std::string::npos);

    CHECK(run_cli("table --k 0 --out " + tmp.path.string()) == 2);
    CHECK(run_cli("table --k 13 --out " + tmp.path.string()) == 2);
}

TEST_CASE("find-eps subcommand", "[cli]")
{
    TempDir tmp;
    write(tmp.path / "model.json", R"({"model":"nh_dirac","b_x":1.0})");

    const std::string base = "find-eps --model " + (tmp.path / "model.json").string() +
                             " --out " + tmp.path.string();
    REQUIRE(run_cli(base + " --region -2 2 -2 2 --grid 64") == 0);
    const std::string first = slurp(tmp.path / "eps.json");
    const json eps = json::parse(first);
    REQUIRE(eps["count"] == 2);
    CHECK(std::abs(eps["eps"][0]["point"][1].get<double>() + 1.0) < 1e-9);
    CHECK(std::abs(eps["eps"][1]["point"][1].get<double>() - 1.0) < 1e-9);

    REQUIRE(run_cli(base + " --region -2 2 -2 2 --grid 64") == 0);
    CHECK(slurp(tmp.path / "eps.json") == first);

    // empty region -> exit 3
    CHECK(run_cli(base + " --region 2 3 2 3") == 3);

    // malformed model -> exit 2
    write(tmp.path / "bad.json", R"({"model":"nh_dirac")");
    CHECK(run_cli("find-eps --model " + (tmp.path / "bad.json").string() + " --out " +
                  tmp.path.string()) == 2);
    CHECK(run_cli("find-eps --model " + (tmp.path / "missing.json").string() + " --out " +
                  tmp.path.string()) == 2);
}

TEST_CASE("trace subcommand and rerun determinism", "[cli]")
{
    TempDir tmp;
    write(tmp.path / "model.json", R"({"model":"square_root","z1":[0,-1],"z2":[0,1]})");
    write(tmp.path / "loop.json",
          R"({"kind":"circle","center":[0,0],"radius":3,"orientation":"cw","samples":1024})");

    const std::string cmd = "trace --model " + (tmp.path / "model.json").string() + " --loop " +
                            (tmp.path / "loop.json").string() + " --csv --out " +
                            tmp.path.string();
    REQUIRE(run_cli(cmd) == 0);
    const std::string first = slurp(tmp.path / "trace.json");
    const json tr = json::parse(first);
    CHECK(tr["word"] == "ab");
    CHECK(tr["permutation"] == "identity");
    CHECK(tr["chirality"] == "CW(1)");
    CHECK(tr["vorticity"]["nearest"] == 1.0);
    CHECK(std::abs(tr["d_arg"].get<double>() + 4.0 * 3.14159265358979) < 1e-6);

    const std::string csv = slurp(tmp.path / "trace.csv");
    CHECK(csv.rfind("t,re_Eplus,im_Eplus,re_Eminus,im_Eminus,re_D,im_D\n", 0) == 0);

    // rerun is byte-identical
    REQUIRE(run_cli(cmd) == 0);
    CHECK(slurp(tmp.path / "trace.json") == first);

    // reversed orientation flips the chirality class
    write(tmp.path / "loop_ccw.json",
          R"({"kind":"circle","center":[0,0],"radius":3,"orientation":"ccw","samples":1024})");
    REQUIRE(run_cli("trace --model " + (tmp.path / "model.json").string() + " --loop " +
                    (tmp.path / "loop_ccw.json").string() + " --out " + tmp.path.string()) == 0);
    CHECK(eptopo::load_json_file(tmp.path / "trace.json")["chirality"] == "CCW(1)");

    // contractible loop
    write(tmp.path / "loop_far.json",
          R"({"kind":"circle","center":[5,5],"radius":0.5,"orientation":"cw","samples":256})");
    REQUIRE(run_cli("trace --model " + (tmp.path / "model.json").string() + " --loop " +
                    (tmp.path / "loop_far.json").string() + " --out " + tmp.path.string()) == 0);
    const json far = eptopo::load_json_file(tmp.path / "trace.json");
    CHECK(far["word"] == "");
    CHECK(far["chirality"] == "Trivial");

    // loop through an EP -> numerical failure
    write(tmp.path / "loop_hit.json",
          R"({"kind":"polyline","points":[[-2,-2],[0,1],[2,-2]]})");
    CHECK(run_cli("trace --model " + (tmp.path / "model.json").string() + " --loop " +
                  (tmp.path / "loop_hit.json").string() + " --out " + tmp.path.string()) == 4);
}

TEST_CASE("lift subcommand", "[cli]")
{
    TempDir tmp;
    REQUIRE(run_cli("lift --word ba --out " + tmp.path.string()) == 0);
    const json l = eptopo::load_json_file(tmp.path / "lift.json");
    CHECK(l["closes"] == true);
    CHECK(l["order_to_close"] == 1);
    CHECK(l["cover_word"] == "B C^-1 A");
    CHECK(l["in_cover_subgroup"] == true);

    REQUIRE(run_cli("lift --word a --out " + tmp.path.string()) == 0);
    const json la = eptopo::load_json_file(tmp.path / "lift.json");
    CHECK(la["closes"] == false);
    CHECK(la["order_to_close"] == 2);
    CHECK(la["in_cover_subgroup"] == false);
    CHECK(la["cover_word"].is_null());

    CHECK(run_cli("lift --word xyz --out " + tmp.path.string()) == 2);
}

TEST_CASE("project subcommand", "[cli]")
{
    TempDir tmp;
    write(tmp.path / "pts.csv", "n,chi\n0,0\n2.6257,0.6001\n");
    REQUIRE(run_cli("project --dir to-sphere --in " + (tmp.path / "pts.csv").string() +
                    " --out " + tmp.path.string()) == 0);
    const std::string sphere = slurp(tmp.path / "sphere.csv");
    CHECK(sphere.rfind("nt,chit,xit\n", 0) == 0);
    CHECK(sphere.find("\n0,0,-1\n") != std::string::npos);

    // north pole renders as inf,inf
    write(tmp.path / "sp.csv", "nt,chit,xit\n0,0,1\n0,0,-1\n");
    REQUIRE(run_cli("project --dir to-plane --in " + (tmp.path / "sp.csv").string() + " --out " +
                    tmp.path.string()) == 0);
    const std::string plane = slurp(tmp.path / "plane.csv");
    CHECK(plane == "n,chi\ninf,inf\n0,0\n");

    CHECK(run_cli("project --dir to-sphere --in " + (tmp.path / "missing.csv").string() +
                  " --out " + tmp.path.string()) == 2);
    write(tmp.path / "badhdr.csv", "x,y\n1,2\n");
    CHECK(run_cli("project --dir to-sphere --in " + (tmp.path / "badhdr.csv").string() +
                  " --out " + tmp.path.string()) == 2);
}

TEST_CASE("surface subcommand", "[cli]")
{
    TempDir tmp;
    write(tmp.path / "model.json", R"({"model":"nh_dirac","b_x":1.0})");
    const std::string cmd = "surface --model " + (tmp.path / "model.json").string() +
                            " --region -2 2 -2 2 --nx 101 --ny 101 --out " + tmp.path.string();
    REQUIRE(run_cli(cmd) == 0);
    CHECK(fs::exists(tmp.path / "surface_re.csv"));
    CHECK(fs::exists(tmp.path / "surface_im.csv"));
    CHECK(fs::exists(tmp.path / "locus_norm.csv"));
    CHECK(fs::exists(tmp.path / "locus_dot.csv"));
    const json inter = eptopo::load_json_file(tmp.path / "intersections.json");
    REQUIRE(inter["intersections"].size() == 2);

    CHECK(run_cli("surface --model " + (tmp.path / "model.json").string() +
                  " --region -2 2 -2 2 --nx 1 --ny 101 --out " + tmp.path.string()) == 2);

    // square-root sheets: both eigenvalues vanish where the cones touch
    write(tmp.path / "sq.json", R"({"model":"square_root","z1":[0,-1],"z2":[0,1]})");
    REQUIRE(run_cli("surface --model " + (tmp.path / "sq.json").string() +
                    " --region -2 2 -2 2 --nx 101 --ny 101 --out " + tmp.path.string()) == 0);
    bool touch_lower = false, touch_upper = false;
    for (const std::string& file : {std::string("surface_re.csv"), std::string("surface_im.csv")}) {
        std::ifstream is(tmp.path / file);
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            std::stringstream ss(line);
            std::string cell;
            std::vector<double> row;
            while (std::getline(ss, cell, ','))
                row.push_back(std::stod(cell));
            if (std::abs(row[0]) < 1e-12 && std::abs(std::abs(row[1]) - 1.0) < 1e-12) {
                CHECK(std::abs(row[2]) < 1e-12);
                CHECK(std::abs(row[3]) < 1e-12);
                (row[1] < 0 ? touch_lower : touch_upper) = true;
            }
        }
    }
    CHECK(touch_lower);
    CHECK(touch_upper);
}

TEST_CASE("trace subcommand on the Dirac model", "[cli]")
{
    // the Dirac EPs wind oppositely, so the pair loop has word ab but
    // zero spectral vorticity
    TempDir tmp;
    write(tmp.path / "model.json", R"({"model":"nh_dirac","b_x":1.0})");
    write(tmp.path / "loop.json",
          R"({"kind":"circle","center":[0,0],"radius":3,"orientation":"cw","samples":1024})");
    REQUIRE(run_cli("trace --model " + (tmp.path / "model.json").string() + " --loop " +
                    (tmp.path / "loop.json").string() + " --out " + tmp.path.string()) == 0);
    const json tr = eptopo::load_json_file(tmp.path / "trace.json");
    CHECK(tr["word"] == "ab");
    CHECK(tr["permutation"] == "identity");
    CHECK(tr["vorticity"]["nearest"] == 0.0);
    CHECK(tr["word_vorticity"] == 1.0);
    CHECK(std::abs(tr["d_arg"].get<double>()) < 1e-6);
}

TEST_CASE("verify subcommand (reduced battery)", "[cli]")
{
    TempDir tmp;
    REQUIRE(run_cli("verify --grid 128 --loops 10 --words 500 --seed 7 --out " +
                    tmp.path.string()) == 0);
    const json certs = eptopo::load_json_file(tmp.path / "certificates.json");
    CHECK(certs["all_pass"] == true);
    CHECK(certs["certificates"].size() == 6);
}
