#include "swat/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "swat/api.hpp"
#include "swat/bench.hpp"
#include "swat/service.hpp"
#include "swat/snapshot_io.hpp"

namespace swat::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string fixed(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string join_names(const GraphSnapshot& snap, const Team& members) {
    std::string out;
    for (Index m : members) {
        if (!out.empty()) out += ", ";
        out += snap.individual(m).name + " (" + snap.individual(m).id + ")";
    }
    return out;
}

CompetenceMode mode_from(const std::string& text) {
    auto mode = parse_competence_mode(text);
    if (!mode) throw InvalidParams("--mode must be avg or max");
    return *mode;
}

}  // namespace

MetricWeights parse_weight_spec(const std::string& spec) {
    std::array<double, 4> w{};
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidParams("weight '" + item + "' is not name=value");
        const std::string name = item.substr(0, eq);
        std::size_t slot;
        if (name == "comp" || name == "competence") {
            slot = 0;
        } else if (name == "coh" || name == "cohesiveness") {
            slot = 1;
        } else if (name == "tur" || name == "user_repetition") {
            slot = 2;
        } else if (name == "tcr" || name == "concept_repetition") {
            slot = 3;
        } else {
            throw InvalidParams("unknown metric '" + name + "' (use comp, coh, tur, tcr)");
        }
        try {
            std::size_t used = 0;
            w[slot] = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidParams("weight '" + item + "' has no numeric value");
        }
    }
    return MetricWeights(w[0], w[1], w[2], w[3]);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Team recommendation over competence, social and history graphs", "swat"};
    app.require_subcommand(1);

    std::string snapshot_path;
    auto add_snapshot = [&](CLI::App* cmd) {
        cmd->add_option("--snapshot", snapshot_path, "Snapshot file written by `ingest`")->envname("SWAT_SNAPSHOT");
    };
    auto need_snapshot = [&]() {
        if (snapshot_path.empty()) throw UsageError("--snapshot (or SWAT_SNAPSHOT) is required");
        return load_snapshot(snapshot_path);
    };
    bool as_json = false;
    std::function<void()> action;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse a corpus directory into a snapshot file");
    std::string corpus_dir, out_path;
    ingest->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    ingest->add_option("--out", out_path, "Snapshot file to write")->required();
    ingest->add_flag("--json", as_json);
    ingest->callback([&] {
        action = [&] {
            auto result = ingest_corpus(corpus_dir);
            save_snapshot(result.snapshot, out_path);
            const auto& snap = result.snapshot;
            if (as_json) {
                api::Json o;
                o["snapshot"] = out_path;
                o["individuals"] = snap.individuals().size();
                o["areas"] = snap.areas().size();
                o["publications"] = snap.publications().size();
                o["history_teams"] = snap.history_teams().size();
                o["anomalies"] = api::Json::array();
                for (const auto& a : result.parse_anomalies.entries) {
                    api::Json e;
                    e["where"] = a.where.str();
                    e["rule"] = a.rule;
                    e["action"] = std::string(to_string(a.action));
                    o["anomalies"].push_back(std::move(e));
                }
                o["derived_edges"] = result.derived.entries.size();
                out << o.dump() << '\n';
            } else {
                for (const auto& a : result.parse_anomalies.entries)
                    err << a.where.str() << ": " << a.rule << " (" << to_string(a.action) << ")\n";
                out << "wrote " << out_path << ": " << snap.individuals().size() << " individuals, "
                    << snap.areas().size() << " areas, " << snap.publications().size() << " publications, "
                    << snap.history_teams().size() << " history teams; " << result.parse_anomalies.entries.size()
                    << " anomalies, " << result.derived.entries.size() << " derived competence edges\n";
            }
        };
    });

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus directory");
    SyntheticParams params{200, 20, 600, 2};
    std::uint64_t seed = 1;
    synth->add_option("--out", out_path, "Corpus directory to write")->required();
    synth->add_option("--individuals", params.individuals)->capture_default_str();
    synth->add_option("--areas", params.areas)->capture_default_str();
    synth->add_option("--publications", params.publications)->capture_default_str();
    synth->add_option("--dimensions", params.dimensions)->capture_default_str();
    synth->add_option("--seed", seed)->capture_default_str();
    synth->callback([&] {
        action = [&] {
            write_corpus(generate_synthetic(params, seed), out_path);
            out << "wrote synthetic corpus to " << out_path << '\n';
        };
    });

    // stats
    auto* stats = app.add_subcommand("stats", "Corpus statistics");
    add_snapshot(stats);
    stats->add_flag("--json", as_json);
    stats->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            auto s = compute_stats(snap);
            if (as_json) {
                out << api::stats(s).dump() << '\n';
                return;
            }
            out << "individuals          " << s.individuals_count << '\n'
                << "concepts             " << s.concepts_count << '\n'
                << "teams                " << s.teams_count << '\n'
                << "connections/person   " << fixed(s.avg_connections_per_individual) << '\n'
                << "individuals/team     " << fixed(s.avg_individuals_per_team) << '\n'
                << "max individuals/team " << s.max_individuals_per_team << '\n'
                << "organizations        " << s.organizations_count << '\n'
                << "countries            " << s.countries_count << '\n';
            out << "authors  articles  cdf\n";
            for (const auto& [n, c] : s.authors_histogram)
                out << n << "  " << c << "  " << fixed(s.authors_cdf.at(n)) << '\n';
        };
    });

    // suggest
    auto* sug = app.add_subcommand("suggest", "Autocomplete expertise areas");
    add_snapshot(sug);
    std::string query;
    int limit = 10;
    sug->add_option("--q,query", query, "Text typed so far")->required();
    sug->add_option("--limit", limit)->capture_default_str();
    sug->add_flag("--json", as_json);
    sug->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            auto body = api::suggest(snap, query, limit);
            if (as_json) {
                out << body.dump() << '\n';
                return;
            }
            for (const auto& h : body)
                out << h["area"].get<std::string>() << "  " << h["name"].get<std::string>() << "  "
                    << h["score"].get<double>() << "  " << h["match_kind"].get<std::string>() << '\n';
        };
    });

    // experts
    auto* exp = app.add_subcommand("experts", "Top experts for an expertise area");
    add_snapshot(exp);
    std::string area;
    int k = 20;
    bool expand = false;
    exp->add_option("--area", area)->required();
    exp->add_option("--k", k)->capture_default_str();
    exp->add_flag("--expand", expand, "Include holders of related areas");
    exp->add_flag("--json", as_json);
    exp->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            auto body = api::experts(snap, area, k, expand);
            if (as_json) {
                out << body.dump() << '\n';
                return;
            }
            for (const auto& h : body) {
                out << fixed(h["score"].get<double>()) << "  " << h["individual"].get<std::string>() << "  "
                    << h["name"].get<std::string>();
                if (!h["via_related"].is_null()) out << "  via " << h["via_related"]["area"].get<std::string>();
                out << '\n';
            }
        };
    });

    // recommend
    auto* rec = app.add_subcommand("recommend", "Rank candidate teams for a set of expertise areas");
    add_snapshot(rec);
    std::vector<std::string> areas;
    std::string weight_spec, mode_text = "avg";
    std::size_t team_limit = 20;
    rec->add_option("--areas", areas, "Comma-separated area ids")->required()->delimiter(',');
    rec->add_option("--k", k, "Experts per area")->capture_default_str();
    rec->add_option("--weights", weight_spec, "e.g. comp=1,coh=1,tur=1,tcr=1 (omitted = 0)");
    rec->add_option("--mode", mode_text, "avg or max")->capture_default_str();
    rec->add_option("--limit", team_limit)->capture_default_str();
    rec->add_flag("--json", as_json);
    rec->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            api::RecommendRequest req;
            req.areas = areas;
            req.k = k;
            if (!weight_spec.empty()) req.weights = parse_weight_spec(weight_spec);
            req.mode = mode_from(mode_text);
            if (team_limit < 1) throw InvalidParams("--limit must be >= 1");
            req.limit = team_limit;
            auto body = api::recommend(snap, req);
            if (as_json) {
                out << body.dump() << '\n';
                return;
            }
            out << "rank  total   comp    coh     tur  tcr     members\n";
            for (const auto& t : body["teams"]) {
                Team members;
                for (const auto& m : t["members"]) members.push_back(snap.individual_index(m["id"].get<std::string>()));
                out << t["rank"].get<std::size_t>() << "     " << fixed(t["total"].get<double>()) << "  "
                    << fixed(t["raw"]["competence"].get<double>()) << "  "
                    << fixed(t["raw"]["cohesiveness"].get<double>()) << "  "
                    << t["raw"]["user_repetition"].get<std::size_t>() << "    "
                    << fixed(t["raw"]["concept_repetition"].get<double>()) << "  " << join_names(snap, members)
                    << '\n';
            }
            out << body["candidates"].get<std::size_t>() << " candidate teams from "
                << body["combinations"].get<std::size_t>() << " combinations\n";
        };
    });

    // score
    auto* sc = app.add_subcommand("score", "Score a hand-picked team");
    add_snapshot(sc);
    std::vector<std::string> members;
    sc->add_option("--members", members, "Comma-separated individual ids")->required()->delimiter(',');
    sc->add_option("--areas", areas, "Comma-separated area ids")->required()->delimiter(',');
    sc->add_option("--weights", weight_spec);
    sc->add_option("--mode", mode_text)->capture_default_str();
    sc->add_flag("--json", as_json);
    sc->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            api::ScoreRequest req;
            req.members = members;
            req.areas = areas;
            if (!weight_spec.empty()) req.weights = parse_weight_spec(weight_spec);
            req.mode = mode_from(mode_text);
            auto body = api::score(snap, req);
            if (as_json) {
                out << body.dump() << '\n';
                return;
            }
            const auto& raw = body["raw"];
            const auto& norm = body["normalized"];
            out << "competence          " << fixed(raw["competence"].get<double>()) << '\n'
                << "cohesiveness        " << fixed(raw["cohesiveness"].get<double>()) << '\n'
                << "user repetition     " << raw["user_repetition"].get<std::size_t>() << " ("
                << fixed(norm["user_repetition"].get<double>()) << ")\n"
                << "concept repetition  " << fixed(raw["concept_repetition"].get<double>()) << '\n'
                << "total               " << fixed(body["total"].get<double>()) << '\n';
            for (const auto& d : body["distances"]) {
                out << "  " << d["a"].get<std::string>() << " - " << d["b"].get<std::string>() << ": "
                    << (d["distance"].is_null() ? std::string("unreachable") : std::to_string(d["distance"].get<int>()))
                    << '\n';
            }
        };
    });

    // bench
    auto* bench = app.add_subcommand("bench", "Time expert retrieval, metrics and recommendation per area count");
    add_snapshot(bench);
    BenchConfig cfg;
    std::string csv_path;
    bench->add_option("--areas-min", cfg.areas_min)->capture_default_str();
    bench->add_option("--areas-max", cfg.areas_max)->capture_default_str();
    bench->add_option("--k", cfg.k)->capture_default_str();
    bench->add_option("--reps", cfg.reps)->capture_default_str();
    bench->add_option("--cap", cfg.cap, "Candidate cap per q")->capture_default_str();
    bench->add_option("--out", csv_path, "CSV file (default: stdout)");
    bench->callback([&] {
        action = [&] {
            auto snap = need_snapshot();
            auto rows = run_bench(snap, cfg);
            if (csv_path.empty()) {
                write_bench_csv(out, rows);
                return;
            }
            std::ofstream file(csv_path, std::ios::trunc);
            if (!file) throw IoError("cannot write " + csv_path);
            write_bench_csv(file, rows);
            if (!file) throw IoError("write failure on " + csv_path);
            out << "wrote " << rows.size() << " rows to " << csv_path << '\n';
        };
    });

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
    add_snapshot(serve);
    std::string host = "127.0.0.1", ui_dir;
    int port = 8080;
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();
    serve->add_option("--ui-dir", ui_dir, "Directory with the built web UI");
    serve->callback([&] {
        action = [&] {
            Service service(make_loaded(need_snapshot()));
            httplib::Server server;
            std::optional<std::filesystem::path> ui;
            if (!ui_dir.empty()) ui = ui_dir;
            service.mount(server, ui);
            out << "listening on http://" << host << ':' << port << '\n' << std::flush;
            if (!server.listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "swat: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (action) action();
        return kOk;
    } catch (const UsageError& e) {
        err << "swat: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "swat: " << e.what() << '\n';
        return kIoError;
    } catch (const FormatError& e) {
        err << "swat: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "swat: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "swat: internal error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace swat::cli
