#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fenhg/axioms.hpp"
#include "fenhg/core.hpp"
#include "fenhg/distance.hpp"
#include "fenhg/generators.hpp"
#include "fenhg/io.hpp"
#include "fenhg/stability.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

struct Options {
    bool json = false;
    std::string norm;  // "", "one", "two"
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fenhg::Game load_game(const std::string& path, const Options& opt) {
    fenhg::Game game = fenhg::parse_game(read_file(path));
    auto validation = fenhg::validate_game(game);
    if (!validation.ok()) {
        std::string message = path + ": invalid game:";
        for (const auto& v : validation.violations) {
            message += "\n  player " + v.player + ": " + v.kind + " (" + v.detail + ")";
        }
        throw std::runtime_error(message);
    }
    if (!opt.norm.empty()) {
        game.norm = opt.norm == "two" ? fenhg::Norm::Two : fenhg::Norm::One;
    }
    return game;
}

void warn_if_unbounded(const fenhg::Game& game) {
    if (!game.degree_bound) {
        std::cerr << "warning: game declares no degree bound; running-time guarantees assume "
                     "bounded neighbourhoods\n";
    }
}

std::string norm_name(fenhg::Norm n) { return n == fenhg::Norm::One ? "one" : "two"; }

std::string format_aggregate(const fenhg::DistancePair& d) {
    if (d.norm == fenhg::Norm::One) return std::to_string(d.plus + d.minus);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", d.aggregate());
    return buffer;
}

json coalition_json(const fenhg::Coalition& c) {
    return json(std::vector<std::string>(c.members().begin(), c.members().end()));
}

json structure_json(const fenhg::CoalitionStructure& gamma) {
    json out = json::array();
    for (const auto& block : gamma.blocks()) out.push_back(coalition_json(block));
    return out;
}

json distance_json(const fenhg::DistancePair& d) {
    return json{{"plus", d.plus},
                {"minus", d.minus},
                {"aggregate", d.aggregate()},
                {"norm", norm_name(d.norm)}};
}

void emit(const Options& opt, const json& doc, const std::string& text) {
    if (opt.json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

fenhg::StabilityNotion parse_notion(const std::string& name) {
    if (name == "perfect") return fenhg::StabilityNotion::Perfect;
    if (name == "nash") return fenhg::StabilityNotion::Nash;
    if (name == "is") return fenhg::StabilityNotion::IndividuallyStable;
    if (name == "cis") return fenhg::StabilityNotion::ContractuallyIndividuallyStable;
    throw std::runtime_error("unknown notion '" + name + "' (expected perfect|nash|is|cis)");
}

int run_dist(const std::string& game_file, const std::string& player,
             const std::string& coalition_text, const Options& opt) {
    auto game = load_game(game_file, opt);
    auto coalition = fenhg::parse_coalition(coalition_text, game);
    auto it = game.ballots.find(player);
    if (it == game.ballots.end()) throw std::runtime_error("unknown player '" + player + "'");
    auto d = fenhg::delta(it->second, coalition, game.norm);
    emit(opt,
         json{{"command", "dist"},
              {"player", player},
              {"coalition", coalition_json(coalition)},
              {"plus", d.plus},
              {"minus", d.minus},
              {"aggregate", d.aggregate()},
              {"norm", norm_name(d.norm)}},
         "plus: " + std::to_string(d.plus) + "\nminus: " + std::to_string(d.minus) +
             "\naggregate: " + format_aggregate(d) + "\n");
    return kExitOk;
}

int run_compare(const std::string& game_file, const std::string& player, const std::string& a_text,
                const std::string& b_text, const Options& opt) {
    auto game = load_game(game_file, opt);
    auto a = fenhg::parse_coalition(a_text, game);
    auto b = fenhg::parse_coalition(b_text, game);
    auto it = game.ballots.find(player);
    if (it == game.ballots.end()) throw std::runtime_error("unknown player '" + player + "'");
    auto ordering = fenhg::compare_coalitions(it->second, a, b, game.norm);
    std::string verdict = ordering == fenhg::Ordering::PrefersFirst    ? "prefers-first"
                          : ordering == fenhg::Ordering::PrefersSecond ? "prefers-second"
                                                                       : "indifferent";
    emit(opt,
         json{{"command", "compare"},
              {"player", player},
              {"a", coalition_json(a)},
              {"b", coalition_json(b)},
              {"a_distance", distance_json(fenhg::delta(it->second, a, game.norm))},
              {"b_distance", distance_json(fenhg::delta(it->second, b, game.norm))},
              {"ordering", verdict}},
         verdict + "\n");
    return kExitOk;
}

int run_verify(const std::string& game_file, const std::string& partition_file,
               const std::string& notion_name, const std::string& in_degree, const Options& opt) {
    auto game = load_game(game_file, opt);
    warn_if_unbounded(game);
    auto gamma = fenhg::parse_partition(read_file(partition_file), game);
    auto notion = parse_notion(notion_name);
    auto mode = in_degree == "unbounded" ? fenhg::InDegreeMode::Unbounded
                                         : fenhg::InDegreeMode::Bounded;
    auto report = fenhg::verify(game, gamma, notion, mode);

    json doc{{"command", "verify"}, {"notion", notion_name}, {"stable", report.stable}};
    std::string text = "notion: " + notion_name + "\nstable: " + (report.stable ? "yes" : "no") +
                       "\n";
    if (report.witness) {
        doc["witness"] = json{{"player", report.witness->player},
                              {"target", coalition_json(report.witness->target)}};
        text += "witness: player " + report.witness->player + " deviates to " +
                fenhg::serialize_coalition(report.witness->target) + "\n";
    } else {
        json distances = json::object();
        for (const auto& [p, d] : report.distances) {
            distances[p] = distance_json(d);
            text += "  " + p + ": plus=" + std::to_string(d.plus) +
                    " minus=" + std::to_string(d.minus) + " aggregate=" + format_aggregate(d) +
                    "\n";
        }
        doc["distances"] = distances;
    }
    emit(opt, doc, text);
    return report.stable ? kExitOk : kExitNegative;
}

int run_solve(const std::string& game_file, const std::string& notion_name,
              const std::string& method, bool enumerate_all, std::size_t guard,
              const Options& opt) {
    auto game = load_game(game_file, opt);
    warn_if_unbounded(game);
    auto notion = parse_notion(notion_name);

    std::vector<fenhg::CoalitionStructure> found;
    std::string used_method = method;
    if (method.empty()) {
        used_method = (notion == fenhg::StabilityNotion::Perfect ||
                       notion == fenhg::StabilityNotion::ContractuallyIndividuallyStable)
                          ? "descent"
                          : "exact";
    }
    if (used_method == "descent") {
        if (notion == fenhg::StabilityNotion::Perfect) {
            auto structure = fenhg::solve_perfect(game);
            if (structure) found.push_back(*structure);
        } else if (notion == fenhg::StabilityNotion::ContractuallyIndividuallyStable) {
            found.push_back(fenhg::solve_cis(game));
        } else {
            throw std::runtime_error("--method descent applies to perfect and cis only");
        }
    } else if (used_method == "exact") {
        fenhg::ExhaustiveOptions options;
        options.enumerate_all = enumerate_all;
        options.guard = guard;
        found = fenhg::solve_exhaustive(game, notion, options);
    } else {
        throw std::runtime_error("unknown method '" + used_method + "' (expected exact|descent)");
    }

    json doc{{"command", "solve"},
             {"notion", notion_name},
             {"method", used_method},
             {"count", found.size()}};
    json structures = json::array();
    std::string text;
    for (const auto& gamma : found) {
        structures.push_back(structure_json(gamma));
        text += fenhg::serialize_partition(gamma) + "\n";
    }
    doc["structures"] = structures;
    if (found.empty()) text = "no " + notion_name + "-stable structure exists\n";
    emit(opt, doc, text);
    return found.empty() ? kExitNegative : kExitOk;
}

int run_axioms(const std::string& game_file, std::uint64_t trials, std::uint64_t seed,
               const Options& opt) {
    auto game = load_game(game_file, opt);
    warn_if_unbounded(game);
    auto reports = fenhg::run_axiom_suite(game, trials, seed);

    bool all_ok = true;
    json doc{{"command", "axioms"}, {"trials", trials}, {"seed", seed}};
    json axioms = json::array();
    std::string text;
    for (const auto& report : reports) {
        all_ok = all_ok && report.ok();
        json entry{{"axiom", report.axiom},
                   {"trials", report.trials},
                   {"counterexamples", json::array()}};
        text += report.axiom + ": " + std::to_string(report.trials) + " trials, " +
                std::to_string(report.counterexamples.size()) + " counterexamples\n";
        for (const auto& cx : report.counterexamples) {
            json jcx{{"player", cx.player}, {"detail", cx.detail}, {"trial", cx.trial}};
            if (cx.first) jcx["first"] = coalition_json(*cx.first);
            if (cx.second) jcx["second"] = coalition_json(*cx.second);
            entry["counterexamples"].push_back(jcx);
            text += "  player " + cx.player + ": " + cx.detail + "\n";
        }
        axioms.push_back(entry);
    }
    doc["axioms"] = axioms;
    doc["ok"] = all_ok;
    emit(opt, doc, text);
    return all_ok ? kExitOk : kExitNegative;
}

int run_gen_random(std::size_t players, std::size_t degree, double pfriend, double ptie,
                   std::uint64_t seed, const Options& opt) {
    fenhg::RandomGameSpec spec{players, degree, pfriend, ptie, seed};
    auto game = fenhg::random_game(spec);
    std::string text = fenhg::serialize_game(game);
    emit(opt, json{{"command", "gen-random"}, {"game", text}}, text);
    return kExitOk;
}

int run_gen_x3c(const std::string& instance_file, const Options& opt) {
    auto inst = fenhg::parse_x3c(read_file(instance_file));
    auto game = fenhg::x3c_to_game(inst);
    std::string text = fenhg::serialize_game(game);
    emit(opt, json{{"command", "gen-x3c"}, {"game", text}}, text);
    return kExitOk;
}

int run_x3c_witness(const std::string& instance_file, const std::string& cover_text,
                    const Options& opt) {
    auto inst = fenhg::parse_x3c(read_file(instance_file));
    std::set<std::size_t> cover;
    std::stringstream stream(cover_text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        std::size_t value = 0;
        for (char c : item) {
            if (c < '0' || c > '9') {
                throw std::runtime_error("--cover expects comma-separated set indices");
            }
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        cover.insert(value);
    }
    auto gamma = fenhg::cover_to_partition(inst, cover);
    std::string text = fenhg::serialize_partition(gamma) + "\n";
    emit(opt, json{{"command", "x3c-witness"}, {"partition", structure_json(gamma)}}, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coalition formation games with friend/enemy rankings and swap-distance "
                 "preferences"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", opt.json, "emit a single JSON document");
        cmd->add_option("--norm", opt.norm, "override the game's norm (one|two)")
            ->check(CLI::IsMember({"one", "two"}));
    };

    std::string game_file, partition_file, instance_file;
    std::string player, coalition_text, a_text, b_text;
    std::string notion = "nash";
    std::string in_degree = "bounded";
    std::string method;
    std::string cover_text;
    bool enumerate_all = false;
    std::size_t guard = 12;
    std::uint64_t trials = 1000, seed = 0;
    std::size_t players = 0, degree = 0;
    double pfriend = 0.5, ptie = 0.0;

    auto* dist = app.add_subcommand("dist", "distance from a player's ballot to a coalition");
    dist->add_option("game-file", game_file)->required();
    dist->add_option("--player", player)->required();
    dist->add_option("--coalition", coalition_text, "e.g. \"{i,a,b}\"")->required();
    add_common(dist);

    auto* compare = app.add_subcommand("compare", "compare two coalitions for one player");
    compare->add_option("game-file", game_file)->required();
    compare->add_option("--player", player)->required();
    compare->add_option("--a", a_text)->required();
    compare->add_option("--b", b_text)->required();
    add_common(compare);

    auto* verify = app.add_subcommand("verify", "verify stability of a coalition structure");
    verify->add_option("game-file", game_file)->required();
    verify->add_option("partition-file", partition_file)->required();
    verify->add_option("--notion", notion)->check(CLI::IsMember({"perfect", "nash", "is", "cis"}));
    verify->add_option("--in-degree", in_degree)->check(CLI::IsMember({"bounded", "unbounded"}));
    add_common(verify);

    auto* solve = app.add_subcommand("solve", "search for a stable coalition structure");
    solve->add_option("game-file", game_file)->required();
    solve->add_option("--notion", notion)->check(CLI::IsMember({"perfect", "nash", "is", "cis"}));
    solve->add_option("--method", method)->check(CLI::IsMember({"exact", "descent"}));
    solve->add_flag("--enumerate", enumerate_all, "list every stable structure");
    solve->add_option("--guard", guard, "player-count limit for exact search");
    add_common(solve);

    auto* axioms = app.add_subcommand("axioms", "property-check the preference model on a game");
    axioms->add_option("game-file", game_file)->required();
    axioms->add_option("--trials", trials);
    axioms->add_option("--seed", seed);
    add_common(axioms);

    auto* gen = app.add_subcommand("gen", "generate games");
    gen->require_subcommand(1);
    auto* gen_random = gen->add_subcommand("random", "seeded bounded-degree random game");
    gen_random->add_option("--players", players)->required();
    gen_random->add_option("--degree", degree)->required();
    gen_random->add_option("--pfriend", pfriend);
    gen_random->add_option("--ptie", ptie);
    gen_random->add_option("--seed", seed);
    add_common(gen_random);
    auto* gen_x3c = gen->add_subcommand("x3c", "reduce an exact-cover instance to a game");
    gen_x3c->add_option("instance-file", instance_file)->required();
    add_common(gen_x3c);

    auto* x3c = app.add_subcommand("x3c", "exact-cover utilities");
    x3c->require_subcommand(1);
    auto* witness = x3c->add_subcommand("witness", "stable structure for an exact cover");
    witness->add_option("instance-file", instance_file)->required();
    witness->add_option("--cover", cover_text, "comma-separated 1-based set indices")->required();
    add_common(witness);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) return run_dist(game_file, player, coalition_text, opt);
        if (compare->parsed()) return run_compare(game_file, player, a_text, b_text, opt);
        if (verify->parsed()) return run_verify(game_file, partition_file, notion, in_degree, opt);
        if (solve->parsed()) {
            return run_solve(game_file, notion, method, enumerate_all, guard, opt);
        }
        if (axioms->parsed()) return run_axioms(game_file, trials, seed, opt);
        if (gen->parsed() && gen_random->parsed()) {
            return run_gen_random(players, degree, pfriend, ptie, seed, opt);
        }
        if (gen->parsed() && gen_x3c->parsed()) return run_gen_x3c(instance_file, opt);
        if (x3c->parsed() && witness->parsed()) {
            return run_x3c_witness(instance_file, cover_text, opt);
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
