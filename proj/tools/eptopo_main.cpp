// eptopo command line: find-eps, trace, table, surface, verify, project,
// lift. All outputs are canonical JSON/CSV written atomically, so a rerun
// with the same inputs is byte-identical.
//
// Exit codes: 0 success, 2 config error, 3 empty result, 4 numerical
// failure, 5 certificate failure.

#include <algorithm>
#include <array>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eptopo/cover.hpp"
#include "eptopo/cut_word.hpp"
#include "eptopo/dihedral.hpp"
#include "eptopo/ep_finder.hpp"
#include "eptopo/homotopy.hpp"
#include "eptopo/json_io.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/model.hpp"
#include "eptopo/sphere.hpp"
#include "eptopo/table.hpp"
#include "eptopo/trace.hpp"
#include "eptopo/verify.hpp"
#include "eptopo/word.hpp"

namespace fs = std::filesystem;
using namespace eptopo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEmpty = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitCertificate = 5;

struct CommonOptions {
    std::string model_path;
    std::string loop_path;
    std::string out_dir = ".";
    double tol = 1e-10;
    std::uint64_t seed = 12345;
    int samples = 4096;
};

fs::path ensure_out_dir(const std::string& dir)
{
    fs::path p(dir);
    if (!p.empty())
        fs::create_directories(p);
    return p;
}

json point_json(ParamPoint p) { return json::array({p.x, p.y}); }

json eps_json(const std::vector<EPLocation>& eps)
{
    json arr = json::array();
    for (const EPLocation& e : eps)
        arr.push_back(json{{"point", point_json(e.point)}, {"residual", e.residual}});
    return arr;
}

Rect region_from_vector(const std::vector<double>& r)
{
    if (r.size() != 4)
        throw ConfigError("--region needs x0,x1,y0,y1");
    return Rect{r[0], r[1], r[2], r[3]};
}

Rect inflated_bbox(const Loop& loop)
{
    const ParamPoint lo = loop_min(loop), hi = loop_max(loop);
    const double pad = 0.5 * std::max(hi.x - lo.x, hi.y - lo.y) + 0.5;
    return Rect{lo.x - pad, hi.x + pad, lo.y - pad, hi.y + pad};
}

int cmd_find_eps(const CommonOptions& opt, const std::vector<double>& region_v, int grid)
{
    const TwoBandModel model = model_from_json(load_json_file(opt.model_path));
    const Rect region = region_from_vector(region_v);
    std::vector<std::string> warnings;
    std::vector<EPLocation> eps;
    try {
        eps = find_eps(model, region, grid, opt.tol, &warnings);
    } catch (const EmptyRegion& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (const std::string& w : warnings)
        std::cerr << "warning: " << w << '\n';

    json out;
    out["count"] = eps.size();
    out["eps"] = eps_json(eps);
    out["grid"] = grid;
    out["model"] = model.name();
    out["region"] = json::array({region.x0, region.x1, region.y0, region.y1});
    out["tol"] = opt.tol;
    write_file_atomic(ensure_out_dir(opt.out_dir) / "eps.json", canonical_json(out));
    return eps.empty() ? kExitEmpty : kExitOk;
}

int cmd_trace(const CommonOptions& opt, bool want_csv, int grid)
{
    const TwoBandModel model = model_from_json(load_json_file(opt.model_path));
    const Loop loop = loop_from_json(load_json_file(opt.loop_path), opt.samples);

    const auto eps = find_eps(model, inflated_bbox(loop), grid, opt.tol);
    std::vector<ParamPoint> pts;
    for (const EPLocation& e : eps)
        pts.push_back(e.point);

    Word word;
    if (!eps.empty())
        word = loop_word(loop, default_cut_rays(pts));
    const BranchTrace trace = trace_loop(model, loop, opt.samples, eps);
    const Vorticity v = numerical_vorticity(trace);

    json out;
    out["chirality"] = to_string(classify(word));
    out["d_arg"] = trace.d_arg;
    out["eps"] = eps_json(eps);
    out["model"] = model.name();
    out["permutation"] = trace.swapped ? "swap" : "identity";
    out["samples_used"] = trace.samples_used;
    out["vorticity"] =
        json{{"nearest", v.nearest.value()}, {"raw", v.raw}, {"residual", v.residual}};
    out["word"] = format_word(word);
    out["word_vorticity"] = vorticity_of_word(word).value();
    const fs::path dir = ensure_out_dir(opt.out_dir);
    write_file_atomic(dir / "trace.json", canonical_json(out));

    if (want_csv) {
        std::string csv = "t,re_Eplus,im_Eplus,re_Eminus,im_Eminus,re_D,im_D\n";
        for (std::size_t i = 0; i < trace.t.size(); ++i) {
            csv += format_double(trace.t[i]);
            csv += ',';
            csv += format_double(trace.branch_plus[i].real());
            csv += ',';
            csv += format_double(trace.branch_plus[i].imag());
            csv += ',';
            csv += format_double(trace.branch_minus[i].real());
            csv += ',';
            csv += format_double(trace.branch_minus[i].imag());
            csv += ',';
            csv += format_double(trace.disc[i].real());
            csv += ',';
            csv += format_double(trace.disc[i].imag());
            csv += '\n';
        }
        write_file_atomic(dir / "trace.csv", csv);
    }
    return kExitOk;
}

int cmd_table(const CommonOptions& opt, int k, bool list_words)
{
    std::vector<WordTableRow> rows;
    try {
        rows = enumerate_table(k, list_words);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const fs::path dir = ensure_out_dir(opt.out_dir);
    write_file_atomic(dir / ("table_" + std::to_string(k) + ".csv"), table_csv(rows));
    if (list_words) {
        std::string csv = "r,word\n";
        for (const WordTableRow& row : rows)
            for (const Word& w : row.words)
                csv += std::to_string(row.r) + ',' + format_word(w) + '\n';
        write_file_atomic(dir / ("table_" + std::to_string(k) + "_words.csv"), csv);
    }
    return kExitOk;
}

// 1D bisection along a grid edge; endpoints must straddle the root.
ParamPoint refine_on_edge(const TwoBandModel& model, ParamPoint a, ParamPoint b,
                          bool first_condition)
{
    auto f = [&](ParamPoint p) {
        const std::complex<double> d = discriminant(model, p);
        return first_condition ? d.real() : 0.5 * d.imag();
    };
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const ParamPoint mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fa > 0.0) == (fm > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (std::abs(f(0.5 * (a + b))) < 1e-13 && distance(a, b) < 1e-13)
            break;
    }
    return 0.5 * (a + b);
}

int cmd_surface(const CommonOptions& opt, const std::vector<double>& region_v, int nx, int ny)
{
    if (nx < 2 || ny < 2)
        throw ConfigError("surface grid must be at least 2x2");
    const TwoBandModel model = model_from_json(load_json_file(opt.model_path));
    const Rect region = region_from_vector(region_v);
    if (!(region.width() > 0.0) || !(region.height() > 0.0))
        throw ConfigError("degenerate surface region");

    auto grid_x = [&](int i) { return region.x0 + region.width() * i / (nx - 1); };
    auto grid_y = [&](int j) { return region.y0 + region.height() * j / (ny - 1); };

    std::string re_csv = "x,y,re_Eplus,re_Eminus\n";
    std::string im_csv = "x,y,im_Eplus,im_Eminus\n";
    std::vector<double> f1(static_cast<std::size_t>(nx) * ny);
    std::vector<double> f2(static_cast<std::size_t>(nx) * ny);
    auto at = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const ParamPoint p{grid_x(i), grid_y(j)};
            const auto ev = eigenvalues(model, p);
            const std::complex<double> d = discriminant(model, p);
            f1[at(i, j)] = d.real();
            f2[at(i, j)] = 0.5 * d.imag();
            re_csv += format_double(p.x) + ',' + format_double(p.y) + ',' +
                      format_double(ev.first.real()) + ',' + format_double(ev.second.real()) + '\n';
            im_csv += format_double(p.x) + ',' + format_double(p.y) + ',' +
                      format_double(ev.first.imag()) + ',' + format_double(ev.second.imag()) + '\n';
        }
    }

    // Constraint loci: zeros of |d_R|^2 - |d_I|^2 (norm) and d_R.d_I
    // (dot), refined along every sign-changing grid edge.
    auto locus_csv = [&](bool first_condition) {
        const std::vector<double>& f = first_condition ? f1 : f2;
        std::string csv = "x,y\n";
        auto emit = [&](ParamPoint p) {
            csv += format_double(p.x) + ',' + format_double(p.y) + '\n';
        };
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const ParamPoint p{grid_x(i), grid_y(j)};
                if (f[at(i, j)] == 0.0)
                    emit(p);
                if (i + 1 < nx && f[at(i, j)] * f[at(i + 1, j)] < 0.0)
                    emit(refine_on_edge(model, p, {grid_x(i + 1), grid_y(j)}, first_condition));
                if (j + 1 < ny && f[at(i, j)] * f[at(i, j + 1)] < 0.0)
                    emit(refine_on_edge(model, p, {grid_x(i), grid_y(j + 1)}, first_condition));
            }
        }
        return csv;
    };

    const fs::path dir = ensure_out_dir(opt.out_dir);
    write_file_atomic(dir / "surface_re.csv", re_csv);
    write_file_atomic(dir / "surface_im.csv", im_csv);
    write_file_atomic(dir / "locus_norm.csv", locus_csv(true));
    write_file_atomic(dir / "locus_dot.csv", locus_csv(false));

    // Locus intersections are joint zeros of both conditions.
    const auto eps = find_eps(model, region, std::max({nx, ny, 16}), opt.tol);
    json inter;
    inter["intersections"] = json::array();
    for (const EPLocation& e : eps)
        inter["intersections"].push_back(point_json(e.point));
    write_file_atomic(dir / "intersections.json", canonical_json(inter));
    return kExitOk;
}

int cmd_verify(const CommonOptions& opt, int homotopy_grid, int n_loops, int n_words)
{
    if (n_loops < 1 || n_words < 1)
        throw ConfigError("verify needs at least one loop and one word");
    const auto certificates = run_certificates(opt.seed, homotopy_grid, n_loops, n_words);
    bool all = true;
    json arr = json::array();
    for (const Certificate& c : certificates) {
        all = all && c.pass;
        json cj;
        cj["details"] = c.details;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        arr.push_back(cj);
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
    }
    json out;
    out["all_pass"] = all;
    out["certificates"] = arr;
    out["seed"] = opt.seed;
    write_file_atomic(ensure_out_dir(opt.out_dir) / "certificates.json", canonical_json(out));
    return all ? kExitOk : kExitCertificate;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path,
                                               const std::string& expected_header)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open " + path);
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("empty CSV " + path);
    if (line != expected_header)
        throw ConfigError("CSV header must be \"" + expected_header + "\"");
    std::vector<std::vector<double>> rows;
    const std::size_t n_cols = std::count(expected_header.begin(), expected_header.end(), ',') + 1;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("bad CSV number \"" + cell + "\" in " + path);
            }
        if (row.size() != n_cols)
            throw ConfigError("bad CSV row width in " + path);
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_project(const CommonOptions& opt, const std::string& direction, const std::string& in_path)
{
    const fs::path dir = ensure_out_dir(opt.out_dir);
    if (direction == "to-plane") {
        const auto rows = read_csv_rows(in_path, "nt,chit,xit");
        std::string csv = "n,chi\n";
        for (const auto& row : rows) {
            const auto p = project({row[0], row[1], row[2]});
            if (p.is_infinity)
                csv += "inf,inf\n";
            else
                csv += format_double(p.point.n) + ',' + format_double(p.point.chi) + '\n';
        }
        write_file_atomic(dir / "plane.csv", csv);
        return kExitOk;
    }
    if (direction == "to-sphere") {
        const auto rows = read_csv_rows(in_path, "n,chi");
        std::string csv = "nt,chit,xit\n";
        for (const auto& row : rows) {
            const SpherePoint s = unproject({row[0], row[1]});
            csv += format_double(s.n) + ',' + format_double(s.chi) + ',' +
                   format_double(s.xi) + '\n';
        }
        write_file_atomic(dir / "sphere.csv", csv);
        return kExitOk;
    }
    throw ConfigError("--dir must be to-plane or to-sphere");
}

int cmd_lift(const CommonOptions& opt, const std::string& word_text,
             const std::string& cover_path, int start_sheet)
{
    Word word;
    try {
        word = reduce_free(parse_word(word_text));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const CoveringSpec cover = cover_path.empty()
                                   ? standard_two_sheet({0.0, -1.0}, {0.0, 1.0})
                                   : cover_from_json(load_json_file(cover_path));
    LiftResult lift;
    try {
        lift = lift_word(cover, word, start_sheet);
    } catch (const IndexOutOfRange& e) {
        throw ConfigError(e.what());
    }

    json out;
    out["closes"] = lift.closes;
    out["order_to_close"] = lift.order_to_close;
    out["sheets"] = cover.sheets;
    out["start_sheet"] = start_sheet;
    out["total_perm"] = lift.total_perm;
    out["word"] = format_word(word);
    const bool two_gen = cover.branch_points.size() == 2;
    if (two_gen) {
        const bool in_sub = is_in_cover_subgroup(word);
        out["in_cover_subgroup"] = in_sub;
        out["cover_word"] =
            in_sub ? json(format_cover_word(rewrite_over_cover_generators(word))) : json();
    }
    write_file_atomic(ensure_out_dir(opt.out_dir) / "lift.json", canonical_json(out));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"topology of exceptional-point pairs: spectra, loop words, covers"};
    app.require_subcommand(1);

    CommonOptions opt;
    app.add_option("--model", opt.model_path, "model spec JSON");
    app.add_option("--loop", opt.loop_path, "loop spec JSON");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--tol", opt.tol, "numerical tolerance");
    app.add_option("--seed", opt.seed, "seed for randomized certificates");
    app.add_option("--samples", opt.samples, "initial loop sample count");

    std::vector<double> region{-2.0, 2.0, -2.0, 2.0};
    int grid = 64;
    auto* find_cmd = app.add_subcommand("find-eps", "locate exceptional points");
    find_cmd->add_option("--region", region, "search rectangle x0,x1,y0,y1")->expected(4);
    find_cmd->add_option("--grid", grid, "scan grid subdivisions");

    bool want_csv = false;
    int trace_grid = 64;
    auto* trace_cmd = app.add_subcommand("trace", "trace eigenvalue branches along a loop");
    trace_cmd->add_flag("--csv", want_csv, "also write per-sample trace.csv");
    trace_cmd->add_option("--grid", trace_grid, "EP scan grid over the loop's bounding box");

    int table_k = 1;
    bool list_words = false;
    auto* table_cmd = app.add_subcommand("table", "reduced-word table for degree k");
    table_cmd->add_option("--k", table_k, "winding degree")->required();
    table_cmd->add_flag("--list-words", list_words, "also write the word listing");

    int nx = 201, ny = 201;
    auto* surface_cmd = app.add_subcommand("surface", "spectral sheets and constraint loci");
    surface_cmd->add_option("--region", region, "grid rectangle x0,x1,y0,y1")->expected(4);
    surface_cmd->add_option("--nx", nx, "grid columns");
    surface_cmd->add_option("--ny", ny, "grid rows");

    int n_loops = 100, n_words = 10000, verify_grid = 256;
    auto* verify_cmd = app.add_subcommand("verify", "run the certificate battery");
    verify_cmd->add_option("--loops", n_loops, "randomized cross-validation loops");
    verify_cmd->add_option("--words", n_words, "randomized word count");
    verify_cmd->add_option("--grid", verify_grid, "homotopy certificate grid");

    std::string direction = "to-plane", in_path;
    auto* project_cmd = app.add_subcommand("project", "stereographic projection utilities");
    project_cmd->add_option("--dir", direction, "to-plane or to-sphere");
    project_cmd->add_option("--in", in_path, "input CSV")->required();

    std::string word_text, cover_path;
    int start_sheet = 0;
    auto* lift_cmd = app.add_subcommand("lift", "lift a loop word on a covering");
    lift_cmd->add_option("--word", word_text, "word in a/b/A/B letters")->required();
    lift_cmd->add_option("--cover", cover_path, "covering spec JSON");
    lift_cmd->add_option("--start", start_sheet, "start sheet");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(find_cmd))
            return cmd_find_eps(opt, region, grid);
        if (app.got_subcommand(trace_cmd))
            return cmd_trace(opt, want_csv, trace_grid);
        if (app.got_subcommand(table_cmd))
            return cmd_table(opt, table_k, list_words);
        if (app.got_subcommand(surface_cmd))
            return cmd_surface(opt, region, nx, ny);
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(opt, std::max(128, verify_grid), n_loops, n_words);
        if (app.got_subcommand(project_cmd))
            return cmd_project(opt, direction, in_path);
        if (app.got_subcommand(lift_cmd))
            return cmd_lift(opt, word_text, cover_path, start_sheet);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ClearanceViolation& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const UnresolvedBranching& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NonQuantized& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const TangentCrossing& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const AmbiguousBasepoint& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
