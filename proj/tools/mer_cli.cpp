#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mer/errors.hpp"
#include "mer/io.hpp"
#include "mer/mer_axis.hpp"
#include "mer/mer_oriented.hpp"
#include "mer/oracle.hpp"
#include "mer/pst.hpp"
#include "mer/workspace.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

using namespace mer;

ordered_json to_json(const Region& r) {
    return ordered_json::array({r.x_min, r.y_min, r.x_max, r.y_max});
}
ordered_json to_json(const Point& p) { return ordered_json::array({p.x, p.y}); }
ordered_json to_json(const AxisRect& r) {
    return ordered_json::array({r.x0, r.y0, r.x1, r.y1});
}
ordered_json to_json(const OrientedRect& r) {
    ordered_json c = ordered_json::array();
    for (const Point& p : r.corners) c.push_back(to_json(p));
    return c;
}

const char* phase_name(MerPhase p) {
    switch (p) {
        case MerPhase::TopDown: return "top-down";
        case MerPhase::BottomUp: return "bottom-up";
        default: return "slab";
    }
}

struct CommonOpts {
    std::string points_path;
    std::vector<double> region_v;
    std::uint64_t budget_words = 0;
    bool has_budget = false;
    bool oracle_check = false;

    Region region() const {
        Region r{region_v[0], region_v[1], region_v[2], region_v[3]};
        if (!r.valid()) throw input_error("invalid region");
        return r;
    }
    WorkspaceMeter meter() const {
        return has_budget ? WorkspaceMeter(budget_words) : WorkspaceMeter();
    }
    std::vector<Point> load() const {
        if (points_path == "-") return read_points_csv(std::cin);
        std::ifstream f(points_path);
        if (!f) throw input_error("cannot open " + points_path);
        return read_points_csv(f);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--points", o.points_path, "points CSV path, '-' for stdin")
        ->required();
    cmd->add_option("--region", o.region_v, "region x0 y0 x1 y1)")
        ->expected(4)
        ->required();
    auto* b = cmd->add_option("--budget-words", o.budget_words,
                              "abort if auxiliary words exceed this");
    cmd->add_flag("--oracle-check", o.oracle_check,
                  "compare against the brute-force reference");
    cmd->parse_complete_callback([&o, b] { o.has_budget = b->count() > 0; });
}

ordered_json counters_json(std::uint64_t reports, std::uint64_t comparisons) {
    return ordered_json{{"reports", reports}, {"comparisons", comparisons}};
}

ordered_json workspace_json(const WorkspaceMeter& m) {
    return ordered_json{{"peak_words", m.peak_words()}};
}

int cmd_gen(std::size_t n, const std::vector<double>& region_v,
            std::uint64_t seed, const std::string& out_path) {
    Region region{region_v[0], region_v[1], region_v[2], region_v[3]};
    if (!region.valid()) throw input_error("invalid region");
    std::vector<Point> pts = generate_points(n, region, seed);
    if (out_path == "-") {
        write_points_csv(std::cout, pts);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw input_error("cannot open " + out_path);
        write_points_csv(f, pts);
    }
    return 0;
}

int cmd_query(const CommonOpts& o, const std::string& kind, double x0,
              double x1, double y1) {
    std::vector<Point> pts = o.load();
    WorkspaceMeter meter = o.meter();
    Region region = o.region();
    if (pts.empty()) throw input_error("empty input");

    QueryStats stats;
    ordered_json result;
    bool match = true;
    {
        AuditScope scope(meter, "query");
        Pst tree = Pst::build(pts, region, PriorityMode::MaxY, &meter);
        if (kind == "enum") {
            std::vector<Point> got;
            tree.enumerate_rectangle(
                x0, x1, y1,
                [&](const Point& p) {
                    got.push_back(p);
                    return true;
                },
                &stats);
            ordered_json arr = ordered_json::array();
            for (const Point& p : got) arr.push_back(to_json(p));
            result = ordered_json{{"count", got.size()}, {"points", arr}};
            if (o.oracle_check) {
                std::vector<Point> want = oracle_enum(pts, x0, x1, y1);
                auto lex = [](const Point& a, const Point& b) {
                    return lex_less(a, b);
                };
                std::sort(got.begin(), got.end(), lex);
                std::sort(want.begin(), want.end(), lex);
                match = got == want;
            }
        } else {
            std::optional<Point> got;
            std::optional<Point> want;
            if (kind == "minx") {
                got = tree.min_x_in_rectangle(x0, x1, y1, &stats);
                if (o.oracle_check) want = oracle_min_x(pts, x0, x1, y1);
            } else if (kind == "maxx") {
                got = tree.max_x_in_rectangle(x0, x1, y1, &stats);
                if (o.oracle_check) want = oracle_max_x(pts, x0, x1, y1);
            } else if (kind == "maxy") {
                got = tree.max_y_in_x_range(x0, x1, &stats);
                if (o.oracle_check) want = oracle_max_y(pts, x0, x1);
            } else {
                throw input_error("unknown query kind '" + kind + "'");
            }
            result = got ? ordered_json{{"point", to_json(*got)}}
                         : ordered_json(nullptr);
            if (o.oracle_check) match = got == want;
        }
    }

    ordered_json out{{"command", "query"},
                     {"kind", kind},
                     {"region", to_json(region)},
                     {"result", result},
                     {"counters", counters_json(0, stats.comparisons)},
                     {"workspace", workspace_json(meter)}};
    if (o.oracle_check)
        out["oracle"] = ordered_json{{"checked", true}, {"match", match}};
    std::cout << out.dump() << '\n';
    return match ? 0 : 3;
}

int cmd_mer_axis(const CommonOpts& o, const std::string& objective_name,
                 bool enumerate) {
    std::vector<Point> pts = o.load();
    WorkspaceMeter meter = o.meter();
    Region region = o.region();
    Objective objective =
        objective_name == "perimeter" ? Objective::Perimeter : Objective::Area;

    PassStats stats;
    std::optional<MerRecord> best;
    auto value = [&](const MerRecord& r) {
        return objective == Objective::Area ? r.area : r.perimeter;
    };
    MerSink track = [&](const MerRecord& r) {
        if (enumerate) {
            ordered_json line{{"rect", to_json(r.rect)},
                              {"phase", phase_name(r.phase)},
                              {"area", r.area},
                              {"perimeter", r.perimeter}};
            std::cout << line.dump() << '\n';
        }
        if (!best || value(r) > value(*best) ||
            (value(r) == value(*best) && lex_less(r.rect, best->rect)))
            best = r;
        return true;
    };

    std::uint64_t reports = 0;
    {
        AuditScope scope(meter, "mer-axis");
        reports += top_down_phase(pts, region, track, &stats, &meter);
        reports += bottom_up_phase(pts, region, track, &stats, &meter);
        reports += slab_pass(pts, region, track, &meter);
    }
    if (!best) throw internal_error("no rectangle produced");

    bool match = true;
    ordered_json oracle_note;
    if (o.oracle_check) {
        OracleConfig cfg;
        if (pts.size() <= cfg.max_n_axis) {
            auto mers = oracle_axis_mers(pts, region, cfg);
            double best_value = 0.0;
            for (const AxisRect& r : mers)
                best_value = std::max(best_value, objective == Objective::Area
                                                      ? area(r)
                                                      : perimeter(r));
            match = value(*best) == best_value;
            oracle_note = ordered_json{{"checked", true}, {"match", match}};
        } else {
            oracle_note = ordered_json{{"checked", false},
                                       {"reason", "instance above oracle cap"}};
        }
    }

    ordered_json out{
        {"command", "mer-axis"},
        {"region", to_json(region)},
        {"result", ordered_json{{"rect", to_json(best->rect)},
                                {"area", best->area},
                                {"perimeter", best->perimeter}}},
        {"counters", counters_json(reports, 0)},
        {"workspace", workspace_json(meter)}};
    if (o.oracle_check) out["oracle"] = oracle_note;
    std::cout << out.dump() << '\n';
    return match ? 0 : 3;
}

int cmd_mer_oriented(const CommonOpts& o, const std::string& objective_name,
                     bool enumerate) {
    std::vector<Point> pts = o.load();
    WorkspaceMeter meter = o.meter();
    Region region = o.region();
    Objective objective =
        objective_name == "perimeter" ? Objective::Perimeter : Objective::Area;

    std::optional<OrientedMerRecord> best;
    auto value = [&](const OrientedMerRecord& r) {
        return objective == Objective::Area ? r.area : r.perimeter;
    };
    std::uint64_t reports = 0;
    {
        AuditScope scope(meter, "mer-oriented");
        reports = enumerate_oriented(
            pts, region,
            [&](const OrientedMerRecord& r) {
                if (enumerate) {
                    ordered_json line{
                        {"corners", to_json(r.rect)},
                        {"support", ordered_json::array({to_json(r.support[0]),
                                                         to_json(r.support[1])})},
                        {"area", r.area},
                        {"perimeter", r.perimeter}};
                    std::cout << line.dump() << '\n';
                }
                if (!best || value(r) > value(*best)) best = r;
                return true;
            },
            &meter);
    }
    if (!best) throw internal_error("no rectangle produced");

    bool match = true;
    ordered_json oracle_note;
    if (o.oracle_check) {
        OracleConfig cfg;
        if (pts.size() <= cfg.max_n_oriented) {
            auto want = oracle_oriented_best(pts, region, cfg);
            const double scale = std::max(want.area, best->area);
            match = std::abs(want.area - best->area) <=
                    cfg.tolerance * std::max(scale, 1.0);
            oracle_note = ordered_json{{"checked", true}, {"match", match}};
        } else {
            oracle_note = ordered_json{{"checked", false},
                                       {"reason", "instance above oracle cap"}};
        }
    }

    ordered_json out{
        {"command", "mer-oriented"},
        {"region", to_json(region)},
        {"result", ordered_json{{"corners", to_json(best->rect)},
                                {"area", best->area},
                                {"perimeter", best->perimeter}}},
        {"counters", counters_json(reports, 0)},
        {"workspace", workspace_json(meter)}};
    if (o.oracle_check) out["oracle"] = oracle_note;
    std::cout << out.dump() << '\n';
    return match ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"in-place priority search tree and empty-rectangle search"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a deterministic point file");
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::vector<double> gen_region;
    std::string gen_out = "-";
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--region", gen_region, "region x0 y0 x1 y1")
        ->expected(4)
        ->required();
    gen->add_option("--out", gen_out, "output path, '-' for stdout");

    // query
    auto* query = app.add_subcommand("query", "run a tree query");
    CommonOpts qo;
    std::string query_kind;
    double qx0 = 0, qx1 = 0, qy1 = 0;
    query->add_option("kind", query_kind, "minx|maxx|maxy|enum")->required();
    add_common(query, qo);
    query->add_option("--x0", qx0)->required();
    query->add_option("--x1", qx1)->required();
    query->add_option("--y1", qy1);

    // mer-axis
    auto* axis = app.add_subcommand("mer-axis",
                                    "largest empty axis-parallel rectangle");
    CommonOpts ao;
    std::string axis_objective = "area";
    bool axis_enumerate = false;
    add_common(axis, ao);
    axis->add_option("--objective", axis_objective, "area|perimeter")
        ->check(CLI::IsMember({"area", "perimeter"}));
    axis->add_flag("--enumerate", axis_enumerate,
                   "stream one JSON object per rectangle");

    // mer-oriented
    auto* oriented = app.add_subcommand(
        "mer-oriented", "largest empty rectangle of any orientation");
    CommonOpts oo;
    std::string oriented_objective = "area";
    bool oriented_enumerate = false;
    add_common(oriented, oo);
    oriented->add_option("--objective", oriented_objective, "area|perimeter")
        ->check(CLI::IsMember({"area", "perimeter"}));
    oriented->add_flag("--enumerate", oriented_enumerate,
                       "stream one JSON object per rectangle");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_n, gen_region, gen_seed, gen_out);
        if (query->parsed()) return cmd_query(qo, query_kind, qx0, qx1, qy1);
        if (axis->parsed()) return cmd_mer_axis(ao, axis_objective, axis_enumerate);
        if (oriented->parsed())
            return cmd_mer_oriented(oo, oriented_objective, oriented_enumerate);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const mer::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const mer::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
