// tft: experiments on trees of f-types over edge-labeled uniform hypergraphs.
//
// Subcommands: generate, types, height, spectrum, tree-audit, arrow, witness.
// Every report embeds the configuration that produced it, and identical
// configurations produce byte-identical reports regardless of worker count.
// Exit codes: 0 success, 2 configuration error, 3 guard exceeded, 4 I/O
// failure, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tft/arrow.hpp"
#include "tft/errors.hpp"
#include "tft/ftype.hpp"
#include "tft/height.hpp"
#include "tft/hypergraph.hpp"
#include "tft/oracle.hpp"

namespace {

using nlohmann::ordered_json;

struct Config {
    std::uint32_t u = 2;
    std::uint64_t seed = 1;
    std::string mode = "random";
    std::uint32_t lambda = 0;
    std::uint64_t n_prefix = 0;
    std::string f_spec;
    std::uint32_t modulus = 2;
    std::string filter_spec = "all";
    std::uint64_t sample_cap = 100000;
    std::string out;
    bool allow_invalid_f = false;
    std::uint32_t workers = 0;
    std::uint64_t guard = 10000000;
    std::string input;

    // subcommand-specific
    std::string instance;
    std::uint64_t v = 0;
    std::uint64_t w = 0;
    std::optional<std::uint32_t> level;
    std::uint32_t levels = 6;
    std::uint64_t v_max = 0;
    std::string variant = "level-only";

    bool u_given = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tft::IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw tft::IoError("failed reading " + path);
    return buf.str();
}

void write_output(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw tft::IoError("cannot open " + cfg.out + " for writing");
    out << text;
    if (!out) throw tft::IoError("failed writing " + cfg.out);
}

tft::GrowthRef make_growth(const Config& cfg, std::uint64_t needed_lmax) {
    if (cfg.f_spec.empty()) {
        const std::uint64_t lmax = std::max<std::uint64_t>({needed_lmax, cfg.lambda, 8});
        if (lmax > 0x7fffffff) throw CLI::ValidationError("--f", "implied lmax is too large");
        return tft::GrowthFunction::minimal(cfg.u, static_cast<std::uint32_t>(lmax));
    }
    if (cfg.f_spec.rfind("minimal:", 0) == 0) {
        const std::string arg = cfg.f_spec.substr(8);
        std::uint32_t lmax = 0;
        try {
            lmax = static_cast<std::uint32_t>(std::stoul(arg));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--f", "expected minimal:<lmax>");
        }
        return tft::GrowthFunction::minimal(cfg.u, lmax);
    }
    if (cfg.f_spec.rfind("file:", 0) == 0) {
        const std::string path = cfg.f_spec.substr(5);
        auto f = tft::GrowthFunction::from_json(read_file(path), cfg.allow_invalid_f);
        if (f->uniformity() != cfg.u) {
            throw CLI::ValidationError("--f", "growth file uniformity does not match --u");
        }
        return f;
    }
    throw CLI::ValidationError("--f", "expected minimal:<lmax> or file:<path>");
}

tft::HypergraphOracle make_oracle(Config& cfg, const tft::GrowthRef& growth) {
    if (!cfg.input.empty()) {
        auto h = tft::hypergraph_from_json(read_file(cfg.input));
        if (cfg.u_given && h.uniformity() != cfg.u) {
            throw CLI::ValidationError("--input", "file uniformity does not match --u");
        }
        cfg.u = h.uniformity();
        if (cfg.n_prefix == 0) cfg.n_prefix = h.vertex_count();
        return tft::HypergraphOracle::table(std::move(h), cfg.seed);
    }
    if (cfg.mode == "random") return tft::HypergraphOracle::random(cfg.u, cfg.seed);
    if (cfg.mode == "generic") {
        return tft::HypergraphOracle::generic(cfg.u, cfg.seed, cfg.lambda, growth);
    }
    throw CLI::ValidationError("--mode", "expected random or generic");
}

tft::PairFilter make_filter(const Config& cfg) {
    if (cfg.filter_spec == "all") return tft::PairFilter::all();
    if (cfg.filter_spec.rfind("label:", 0) == 0) {
        return tft::PairFilter::label_equals(tft::big_from_string(cfg.filter_spec.substr(6)));
    }
    throw CLI::ValidationError("--filter", "expected all or label:<c>");
}

ordered_json growth_json(const tft::GrowthRef& growth) {
    if (growth->kind() == tft::GrowthFunction::Kind::Minimal) return "minimal";
    auto values = ordered_json::array();
    for (std::uint32_t i = 0; i <= growth->materialized_max(); ++i) {
        values.push_back(tft::big_to_string(growth->value(i)));
    }
    return ordered_json{{"u", growth->uniformity()}, {"values", values}};
}

ordered_json config_json(const Config& cfg, const tft::GrowthRef& growth,
                         const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["u"] = cfg.u;
    j["seed"] = cfg.seed;
    j["mode"] = cfg.input.empty() ? cfg.mode : "table";
    j["lambda"] = cfg.lambda;
    j["n_prefix"] = cfg.n_prefix;
    j["f"] = growth_json(growth);
    j["f_lmax"] = growth->lmax();
    j["f_valid"] = growth->valid();
    j["modulus"] = cfg.modulus;
    j["filter"] = cfg.filter_spec;
    j["sample_cap"] = cfg.sample_cap;
    j["allow_invalid_f"] = cfg.allow_invalid_f;
    j["guard"] = cfg.guard;
    if (!cfg.input.empty()) j["input"] = cfg.input;
    j["convention"] = "min-height-1";
    return j;
}

std::string dump_report(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json type_to_json(const tft::FType& t) {
    return ordered_json{{"level", t.level()}, {"type", t.to_string()}};
}

int run_generate(Config& cfg) {
    tft::GrowthRef growth = make_growth(cfg, cfg.lambda);
    if (!cfg.input.empty()) {
        // Round-trips a hypergraph file through parse and canonical serialize.
        auto h = tft::hypergraph_from_json(read_file(cfg.input));
        write_output(cfg, tft::hypergraph_to_json(h));
        return 0;
    }
    const auto oracle = make_oracle(cfg, growth);
    write_output(cfg, tft::hypergraph_to_json(oracle.materialize_prefix(cfg.n_prefix)));
    return 0;
}

int run_types(Config& cfg) {
    const std::uint64_t needed = cfg.level ? *cfg.level : cfg.n_prefix;
    tft::GrowthRef growth = make_growth(cfg, needed);
    ordered_json report;
    if (cfg.level) {
        report["config"] = config_json(cfg, growth, "types");
        report["level"] = *cfg.level;
        auto types = ordered_json::array();
        tft::for_each_type_at_level(growth, *cfg.level, cfg.guard,
                                    [&](const tft::FType& t) { types.push_back(t.to_string()); });
        report["count"] = types.size();
        report["types"] = std::move(types);
    } else {
        const auto oracle = make_oracle(cfg, growth);
        report["config"] = config_json(cfg, growth, "types");
        auto types = ordered_json::array();
        for (std::uint64_t v = 0; v < cfg.n_prefix; ++v) {
            auto t = type_of_vertex(oracle, growth, v);
            auto entry = type_to_json(t);
            entry["v"] = v;
            types.push_back(std::move(entry));
        }
        report["types"] = std::move(types);
    }
    write_output(cfg, dump_report(report));
    return 0;
}

int run_height(Config& cfg) {
    if (cfg.v == cfg.w) throw CLI::ValidationError("--w", "the two vertices must differ");
    tft::GrowthRef growth = make_growth(cfg, std::max(cfg.v, cfg.w));
    const auto oracle = make_oracle(cfg, growth);
    tft::TypeCache cache(oracle, growth);
    cache.build(std::max(cfg.v, cfg.w) + 1);
    const auto trace =
        tft::f_height_types(cache, cache.at(cfg.v), cache.at(cfg.w));
    ordered_json report;
    report["config"] = config_json(cfg, growth, "height");
    report["v"] = cfg.v;
    report["w"] = cfg.w;
    report["height"] = trace.height;
    report["chi"] = trace.height % cfg.modulus;
    auto steps = ordered_json::array();
    for (const auto& step : trace.steps) {
        steps.push_back(ordered_json{{"x", step.x.to_string()},
                                     {"y", step.y.to_string()},
                                     {"meet", step.met.to_string()},
                                     {"level", step.meet_level},
                                     {"terminated", step.terminated}});
    }
    report["trace"] = std::move(steps);
    write_output(cfg, dump_report(report));
    return 0;
}

int run_spectrum(Config& cfg) {
    tft::GrowthRef growth = make_growth(cfg, cfg.n_prefix);
    const auto oracle = make_oracle(cfg, growth);
    tft::SpectrumOptions options;
    options.subjects.resize(cfg.n_prefix);
    for (std::uint64_t i = 0; i < cfg.n_prefix; ++i) options.subjects[i] = i;
    options.filter = make_filter(cfg);
    options.sample_cap = cfg.sample_cap;
    options.modulus = cfg.modulus;
    options.workers = cfg.workers;
    const auto result = tft::height_spectrum(oracle, growth, options);

    ordered_json report;
    report["u"] = cfg.u;
    report["seed"] = cfg.seed;
    report["f"] = growth_json(growth);
    report["N"] = cfg.n_prefix;
    report["filter"] = cfg.filter_spec;
    ordered_json hist = ordered_json::object();
    for (const auto& [h, c] : result.histogram) hist[std::to_string(h)] = c;
    report["histogram"] = std::move(hist);
    report["max_consecutive"] = result.max_consecutive;
    report["convention"] = "min-height-1";
    report["modulus"] = cfg.modulus;
    report["color_counts"] = result.color_counts;
    report["realized_heights"] = result.realized_heights;
    report["pair_universe"] = result.pair_universe;
    report["pairs_examined"] = result.pairs_examined;
    report["pairs_counted"] = result.pairs_counted;
    report["sampled"] = result.sampled;
    report["empty_after_filter"] = result.empty_after_filter;
    report["note"] = "finite prefix approximation; heights are relative to the fixed enumeration";
    report["config"] = config_json(cfg, growth, "spectrum");
    write_output(cfg, dump_report(report));
    return 0;
}

int run_tree_audit(Config& cfg) {
    tft::GrowthRef growth = make_growth(cfg, std::max<std::uint64_t>(cfg.levels, cfg.n_prefix));
    ordered_json report;
    report["config"] = config_json(cfg, growth, "tree-audit");

    // With a prefix configured, also count how many types of each level the
    // prefix vertices realize; finite prefixes only approximate realization.
    std::optional<tft::TypeCache> cache;
    if (cfg.n_prefix > 0) {
        const auto oracle = make_oracle(cfg, growth);
        cache.emplace(oracle, growth);
        cache->build(cfg.n_prefix);
        report["note"] = "realization counts come from a finite prefix approximation";
    }

    auto rows = ordered_json::array();
    for (std::uint32_t level = 0; level <= cfg.levels; ++level) {
        ordered_json row;
        row["level"] = level;
        row["f"] = tft::big_to_string(growth->value(level));
        const tft::BigInt lc = growth->level_count(level);
        const tft::BigInt sc = growth->successor_count(level);
        row["level_count"] = tft::big_to_string(lc);
        row["successor_count"] = tft::big_to_string(sc);
        if (lc <= cfg.guard) {
            std::uint64_t enumerated = 0;
            tft::for_each_type_at_level(growth, level, cfg.guard,
                                        [&](const tft::FType&) { ++enumerated; });
            row["enumerated"] = enumerated;
        } else {
            row["enumerated"] = nullptr;
        }
        row["dominance"] = sc > lc;
        if (cache) {
            std::set<tft::FType> realized;
            for (std::uint64_t v = level; v < cfg.n_prefix; ++v) {
                realized.insert(cache->at(v).restrict_to(level));
            }
            row["realized_count"] = realized.size();
        } else {
            row["realized_count"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    report["rows"] = std::move(rows);
    write_output(cfg, dump_report(report));
    return 0;
}

int run_arrow(Config& cfg) {
    const auto instance = tft::arrow_instance_from_json(read_file(cfg.instance));
    tft::ArrowOptions options;
    options.workers = cfg.workers;
    options.coloring_guard = tft::BigInt(cfg.guard) < (tft::BigInt(1) << 24)
                                 ? (tft::BigInt(1) << 24)
                                 : tft::BigInt(cfg.guard);
    const auto verdict = tft::arrow_check(instance, options);
    ordered_json report = ordered_json::parse(tft::arrow_verdict_to_json(verdict));
    ordered_json out;
    out["config"] = ordered_json{{"command", "arrow"},
                                 {"instance", cfg.instance},
                                 {"k", instance.k},
                                 {"budget", instance.budget},
                                 {"coloring_guard", tft::big_to_string(options.coloring_guard)},
                                 {"convention", "min-height-1"}};
    for (auto& [key, value] : report.items()) out[key] = value;
    write_output(cfg, dump_report(out));
    return 0;
}

int run_witness(Config& cfg) {
    tft::GrowthRef growth = make_growth(cfg, cfg.n_prefix);
    const auto oracle = make_oracle(cfg, growth);
    tft::WitnessVariant variant;
    if (cfg.variant == "strict") {
        variant = tft::WitnessVariant::Strict;
    } else if (cfg.variant == "level-only") {
        variant = tft::WitnessVariant::LevelOnly;
    } else {
        throw CLI::ValidationError("--variant", "expected strict or level-only");
    }
    tft::TypeCache cache(oracle, growth);
    cache.build(cfg.n_prefix);
    const auto scan = tft::witness_scan(cache, cfg.v_max, cfg.n_prefix, variant);

    ordered_json report;
    report["config"] = config_json(cfg, growth, "witness");
    report["variant"] = cfg.variant;
    auto rows = ordered_json::array();
    for (const auto& row : scan.rows) {
        ordered_json r;
        r["v"] = row.v;
        r["found"] = row.pair.has_value();
        if (row.pair) {
            r["pair"] = ordered_json::array({row.pair->first, row.pair->second});
        } else {
            r["pair"] = nullptr;
        }
        r["pairs_checked"] = row.pairs_checked;
        r["plants_above"] = row.plants_above;
        rows.push_back(std::move(r));
    }
    report["results"] = std::move(rows);
    report["found"] = scan.found;
    report["exceptions"] = scan.exceptions;
    report["exception_count"] = scan.exceptions.size();
    report["note"] = "single-step witness search over a finite prefix approximation";
    write_output(cfg, dump_report(report));
    return 0;
}

void add_common_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--u", cfg.u, "uniformity (u-subsets carry labels)")
        ->check(CLI::Range(2u, 64u));
    cmd->add_option("--seed", cfg.seed, "oracle seed; the only randomness source");
    cmd->add_option("--mode", cfg.mode, "oracle mode: random or generic");
    cmd->add_option("--lambda", cfg.lambda, "generic-mode plant depth");
    cmd->add_option("--n-prefix", cfg.n_prefix, "prefix size of the fixed enumeration");
    cmd->add_option("--f", cfg.f_spec, "growth function: minimal:<lmax> or file:<path>");
    cmd->add_option("--modulus", cfg.modulus, "modulus of the height coloring")
        ->check(CLI::Range(1u, 1000000u));
    cmd->add_option("--filter", cfg.filter_spec, "pair filter: all or label:<c>");
    cmd->add_option("--sample-cap", cfg.sample_cap, "max pairs examined by a spectrum");
    cmd->add_option("--out", cfg.out, "output path (stdout when absent)");
    cmd->add_flag("--allow-invalid-f", cfg.allow_invalid_f,
                  "keep a growth function that violates the product inequality");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    cmd->add_option("--guard", cfg.guard, "enumeration guard");
    cmd->add_option("--input", cfg.input, "hypergraph file serving the labels");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments on trees of f-types over edge-labeled uniform hypergraphs"};
    app.require_subcommand(1);
    Config cfg;

    auto* generate = app.add_subcommand("generate", "materialize a prefix as a hypergraph file");
    add_common_options(generate, cfg);

    auto* types = app.add_subcommand("types", "types of prefix vertices, or a whole tree level");
    add_common_options(types, cfg);
    std::uint32_t level_arg = 0;
    auto* level_opt = types->add_option("--level", level_arg, "enumerate this tree level instead");

    auto* height = app.add_subcommand("height", "height and trace of one vertex pair");
    add_common_options(height, cfg);
    height->add_option("--v", cfg.v, "first vertex")->required();
    height->add_option("--w", cfg.w, "second vertex")->required();

    auto* spectrum = app.add_subcommand("spectrum", "height histogram over prefix pairs");
    add_common_options(spectrum, cfg);

    auto* audit = app.add_subcommand("tree-audit", "per-level counts and branching dominance");
    add_common_options(audit, cfg);
    audit->add_option("--levels", cfg.levels, "audit levels 0..L");

    auto* arrow = app.add_subcommand("arrow", "exhaustive arrow-relation check of an instance");
    add_common_options(arrow, cfg);
    arrow->add_option("--instance", cfg.instance, "arrow instance file")->required();

    auto* witness = app.add_subcommand("witness", "meet-witness search over a prefix");
    add_common_options(witness, cfg);
    witness->add_option("--v-max", cfg.v_max, "search witnesses for every v below this");
    witness->add_option("--variant", cfg.variant, "witness variant: strict or level-only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (auto* cmd : app.get_subcommands()) {
            cfg.u_given = cmd->count("--u") > 0;
            if (*level_opt) cfg.level = level_arg;
            if (cmd == generate) return run_generate(cfg);
            if (cmd == types) return run_types(cfg);
            if (cmd == height) return run_height(cfg);
            if (cmd == spectrum) return run_spectrum(cfg);
            if (cmd == audit) return run_tree_audit(cfg);
            if (cmd == arrow) return run_arrow(cfg);
            if (cmd == witness) return run_witness(cfg);
        }
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tft::GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const tft::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const tft::FormatError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
