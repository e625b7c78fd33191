// sdmx: build, inspect and run succinct dictionary-matching indexes.
//
// Exit codes: 0 ok, 1 I/O failure or verify mismatch, 2 bad arguments or
// invalid dictionary, 3 corrupt index file.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sdmx/fuzz.hpp"
#include "sdmx/oracle.hpp"
#include "sdmx/sdmx.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_corrupt = 3;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

sdmx::pattern_source load_patterns(const std::string& path, bool binary) {
    std::istringstream in(read_all(path));
    try {
        return binary ? sdmx::read_patterns_binary(in) : sdmx::read_patterns_text(in);
    } catch (const sdmx::format_error& e) {
        throw usage_error(path + ": " + e.what());
    }
}

// Turns an input-position error into one that names the offending line.
sdmx::pattern_set validated(const sdmx::pattern_source& src, const std::string& path, bool binary) {
    try {
        return sdmx::pattern_set(src.patterns);
    } catch (const sdmx::pattern_error& e) {
        std::size_t i = e.index();
        std::string where = path + (binary ? ": entry " : ":") + std::to_string(src.line[i]);
        auto dup = std::find(src.patterns.begin(), src.patterns.end(), src.patterns[i]);
        if (src.patterns[i].empty()) throw usage_error(where + ": empty pattern");
        throw usage_error(where + ": duplicate pattern (first seen at " + (binary ? "entry " : "line ") +
                          std::to_string(src.line[dup - src.patterns.begin()]) + ")");
    } catch (const sdmx::build_error& e) {
        throw usage_error(path + ": " + e.what());
    }
}

sdmx::any_index load_index(const std::string& path) { return sdmx::read_index_file(path); }

// ---- build

struct build_opts {
    std::string patterns, out, transitions = "flat";
    bool binary = false;
};

int cmd_build(const build_opts& o) {
    auto src = load_patterns(o.patterns, o.binary);
    auto ps = validated(src, o.patterns, o.binary);
    auto pt = sdmx::suffix_lex_order(ps);
    auto report = [&](const auto& idx) {
        sdmx::write_index_file(o.out, idx);
        std::cerr << "built " << o.out << ": m=" << idx.num_states() << " d=" << idx.num_patterns()
                  << " n=" << idx.total_length() << " sigma=" << idx.sigma() << " transitions=" << o.transitions << "\n";
    };
    if (o.transitions == "compressed")
        report(sdmx::build_index<sdmx::compressed_transitions>(ps, pt));
    else
        report(sdmx::build_index<sdmx::flat_transitions>(ps, pt));
    return exit_ok;
}

// ---- scan

struct scan_opts {
    std::string index, text = "-";
    bool verbose = false;
    std::size_t chunk = 1 << 20;
};

int cmd_scan(const scan_opts& o) {
    auto any = load_index(o.index);
    return std::visit(
        [&](const auto& idx) {
            std::vector<std::string> names;
            if (o.verbose)
                for (std::size_t i = 0; i < idx.num_patterns(); ++i) names.push_back(idx.retrieve_pattern(i));

            std::ifstream file;
            std::istream* in = &std::cin;
            if (o.text != "-") {
                file.open(o.text, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open " + o.text);
                in = &file;
            }
            std::string out;
            auto sink = [&](const sdmx::occurrence& occ) {
                out += std::to_string(occ.start);
                out += '\t';
                out += std::to_string(occ.end);
                out += '\t';
                out += std::to_string(occ.pattern_id);
                if (o.verbose) {
                    out += '\t';
                    out += names[occ.pattern_id];
                }
                out += '\n';
            };
            sdmx::scan_state st;
            std::string buf(o.chunk, '\0');
            while (*in) {
                in->read(buf.data(), static_cast<std::streamsize>(buf.size()));
                auto got = static_cast<std::size_t>(in->gcount());
                if (got == 0) break;
                sdmx::feed(idx, st, std::string_view(buf.data(), got), sink);
                std::fwrite(out.data(), 1, out.size(), stdout);
                out.clear();
            }
            std::fflush(stdout);
            const auto& c = st.counters;
            std::cerr << "text_bytes=" << st.step << " occurrences=" << st.occurrences << " next_probes=" << c.next_probes
                      << " next_taken=" << c.next_taken << " failure_steps=" << c.failure_steps
                      << " report_steps=" << c.report_steps << "\n";
            return exit_ok;
        },
        any);
}

// ---- stats

int cmd_stats(const std::string& path) {
    auto any = load_index(path);
    auto r = std::visit([](const auto& idx) { return idx.space(); }, any);
    const auto& m = r.meta;
    std::printf("states m=%zu  patterns d=%zu  length n=%zu  sigma=%zu  transitions=%s\n", m.states, m.patterns,
                m.total_length, m.sigma, r.backend == sdmx::backend_kind::flat ? "flat" : "compressed");
    std::printf("%-14s %14s %14s %14s %16s\n", "component", "payload_bits", "aux_bits", "total_bits", "formula_bits");
    for (const auto& c : r.components)
        std::printf("%-14s %14zu %14zu %14zu %16.1f\n", c.name.c_str(), c.payload_bits, c.aux_bits, c.total_bits(),
                    c.reference_bits);
    std::printf("%-14s %14zu %14zu %14zu %16s\n", "metadata", r.metadata_bits, std::size_t(0), r.metadata_bits, "-");
    std::printf("%-14s %14zu %14zu %14zu %16.1f\n", "total", r.payload_total_bits(),
                r.measured_total_bits() - r.payload_total_bits(), r.measured_total_bits(), r.reference_total_bits);
    double n = static_cast<double>(m.total_length);
    std::printf("bits_per_symbol         %.4f\n", static_cast<double>(r.measured_total_bits()) / n);
    std::printf("report_tree_H*          %.6f\n", r.report_tree_degree_entropy);
    std::printf("transition_H0           %.6f\n", r.transition_entropy);
    std::printf("formula_total_H0_bits   %.1f\n", r.compressed_reference_total_bits);
    std::printf("optimality_ratio        %.4f\n", r.optimality_ratio());
    return exit_ok;
}

// ---- verify

// Compares one backend's output with the oracle; prints the first difference.
template <typename Transitions>
bool check_backend(const sdmx::pattern_set& ps, const std::string& text,
                   const std::vector<sdmx::occurrence>& want, const char* name, const std::string& label) {
    auto idx = sdmx::build_index<Transitions>(ps);
    auto got = sdmx::find_all(idx, text);
    std::sort(got.begin(), got.end());
    if (got == want) return true;
    auto [a, b] = std::mismatch(got.begin(), got.end(), want.begin(), want.end());
    auto show = [](auto it, auto end) {
        if (it == end) return std::string("(none)");
        return std::to_string(it->start) + "\t" + std::to_string(it->end) + "\t" + std::to_string(it->pattern_id);
    };
    std::cout << "MISMATCH " << label << " backend=" << name << " got=" << show(a, got.end())
              << " expected=" << show(b, want.end()) << "\n";
    return false;
}

bool verify_case(const std::vector<std::string>& patterns, const std::string& text, const std::string& label) {
    sdmx::pattern_set ps(patterns);
    auto want = sdmx::oracle::naive_scan(patterns, text);
    bool ok = check_backend<sdmx::flat_transitions>(ps, text, want, "flat", label);
    ok = check_backend<sdmx::compressed_transitions>(ps, text, want, "compressed", label) && ok;
    return ok;
}

struct verify_opts {
    std::string patterns, text;
    bool binary = false;
    std::size_t fuzz = 0;
    uint64_t seed = 1;
};

int cmd_verify(const verify_opts& o) {
    if (o.fuzz > 0) {
        sdmx::fuzz::splitmix64 rng(o.seed);
        const std::size_t sigmas[] = {2, 4, 26, 256};
        std::size_t bad = 0;
        for (std::size_t i = 0; i < o.fuzz; ++i) {
            auto c = sdmx::fuzz::make_case(rng, sigmas[i % 4]);
            if (!verify_case(c.patterns, c.text, "case=" + std::to_string(i))) ++bad;
        }
        std::cout << "verified " << o.fuzz << " cases, seed " << o.seed << ": " << (bad ? "FAIL" : "OK") << " (" << bad
                  << " mismatching)\n";
        return bad ? exit_failure : exit_ok;
    }
    if (o.patterns.empty() || o.text.empty()) throw usage_error("verify needs PATTERNS and TEXT, or --fuzz N");
    auto src = load_patterns(o.patterns, o.binary);
    validated(src, o.patterns, o.binary);
    std::string text = read_all(o.text);
    bool ok = verify_case(src.patterns, text, o.text);
    std::cout << (ok ? "OK" : "FAIL") << " " << text.size() << " bytes\n";
    return ok ? exit_ok : exit_failure;
}

// ---- retrieve

int cmd_retrieve(const std::string& path, std::optional<std::size_t> id) {
    auto any = load_index(path);
    return std::visit(
        [&](const auto& idx) {
            if (!id) {
                for (std::size_t i = 0; i < idx.num_patterns(); ++i) std::cout << i << '\t' << idx.retrieve_pattern(i) << '\n';
                return exit_ok;
            }
            if (*id >= idx.num_patterns())
                throw usage_error("pattern id " + std::to_string(*id) + " out of range (d=" +
                                  std::to_string(idx.num_patterns()) + ")");
            std::cout << idx.retrieve_pattern(*id) << '\n';
            return exit_ok;
        },
        any);
}

// ---- bench

struct bench_opts {
    std::string index, text;
    std::size_t repetitions = 3;
    bool scale = false;
};

int cmd_bench(const bench_opts& o) {
    if (o.repetitions == 0) throw usage_error("--repetitions must be at least 1");
    auto any = load_index(o.index);
    std::string text = read_all(o.text);
    return std::visit(
        [&](const auto& idx) {
            auto r = sdmx::time_scan(idx, {std::string_view(text)}, o.repetitions);
            std::printf("bytes               %llu\n", static_cast<unsigned long long>(r.bytes));
            std::printf("seconds             %.6f\n", r.seconds);
            std::printf("MB/s                %.2f\n", r.megabytes_per_second());
            std::printf("occurrences         %llu\n", static_cast<unsigned long long>(r.last.occurrences));
            std::printf("steps_per_char      %.4f\n", r.steps_per_char());
            std::printf("probes_per_char     %.4f\n", r.probes_per_char());
            if (o.scale) {
                auto d = sdmx::time_scan(idx, {std::string_view(text), std::string_view(text)}, o.repetitions);
                double ratio = r.seconds > 0 ? d.seconds / r.seconds : 0.0;
                std::printf("doubled_seconds     %.6f\n", d.seconds);
                std::printf("doubling_ratio      %.3f\n", ratio);
            }
            return exit_ok;
        },
        any);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Succinct Aho-Corasick dictionary matcher"};
    app.require_subcommand(1);

    build_opts bo;
    auto* build = app.add_subcommand("build", "Build an index from a pattern file");
    build->add_option("patterns", bo.patterns, "Pattern file, one per line ('-' for stdin)")->required();
    build->add_option("index", bo.out, "Output index file")->required();
    build->add_option("--transitions", bo.transitions, "Transition backend")
        ->check(CLI::IsMember({"flat", "compressed"}));
    build->add_flag("--binary", bo.binary, "Patterns are u32-LE length-prefixed records");

    scan_opts so;
    auto* scan = app.add_subcommand("scan", "Report all occurrences as start<TAB>end<TAB>id");
    scan->add_option("index", so.index, "Index file")->required();
    scan->add_option("text", so.text, "Text file ('-' or omitted for stdin)");
    scan->add_flag("-v,--verbose", so.verbose, "Append the matched pattern to each line");

    std::string stats_index;
    auto* stats = app.add_subcommand("stats", "Print the space breakdown of an index");
    stats->add_option("index", stats_index, "Index file")->required();

    verify_opts vo;
    auto* verify = app.add_subcommand("verify", "Check both backends against the naive matcher");
    verify->add_option("patterns", vo.patterns, "Pattern file");
    verify->add_option("text", vo.text, "Text file");
    verify->add_flag("--binary", vo.binary, "Patterns are u32-LE length-prefixed records");
    verify->add_option("--fuzz", vo.fuzz, "Run N random cases instead of files");
    verify->add_option("--seed", vo.seed, "Seed for --fuzz");

    std::string retrieve_index;
    std::optional<std::size_t> retrieve_id;
    bool retrieve_all = false;
    auto* retrieve = app.add_subcommand("retrieve", "Reconstruct patterns by id");
    retrieve->add_option("index", retrieve_index, "Index file")->required();
    auto* id_opt = retrieve->add_option("id", retrieve_id, "Pattern id");
    auto* all_opt = retrieve->add_flag("--all", retrieve_all, "Print every pattern as id<TAB>pattern");
    id_opt->excludes(all_opt);

    bench_opts bno;
    auto* bench = app.add_subcommand("bench", "Time scans of a text");
    bench->add_option("index", bno.index, "Index file")->required();
    bench->add_option("text", bno.text, "Text file")->required();
    bench->add_option("-r,--repetitions", bno.repetitions, "Timed repetitions (best is reported)");
    bench->add_flag("--scale", bno.scale, "Also time the text doubled and report the ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*build) return cmd_build(bo);
        if (*scan) return cmd_scan(so);
        if (*stats) return cmd_stats(stats_index);
        if (*verify) return cmd_verify(vo);
        if (*retrieve) {
            if (!retrieve_all && !retrieve_id) throw usage_error("retrieve needs an id or --all");
            return cmd_retrieve(retrieve_index, retrieve_all ? std::nullopt : retrieve_id);
        }
        if (*bench) return cmd_bench(bno);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const sdmx::format_error& e) {
        std::cerr << "error: corrupt index: " << e.what() << "\n";
        return exit_corrupt;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}
