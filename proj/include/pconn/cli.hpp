#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pconn/homology.hpp"
#include "pconn/io.hpp"

namespace pconn {

/// Exit-code contract: 0 ok, 1 semantic violation, 2 parse/schema error,
/// 3 precision exhaustion.
enum ExitCode {
    kExitOk = 0,
    kExitSemantic = 1,
    kExitParse = 2,
    kExitPrecision = 3,
};

struct RunConfig {
    std::string input;
    std::string command;
    long long precision = 32;
    std::string format = "human"; // human | json
    std::string reference;
    std::string output;
    long long levels = 3;
};

namespace cli_detail {

// -- report rendering ---------------------------------------------------

inline Json validation_to_json(const DecompositionReport& r)
{
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json buckets = Json::object();
        for (const auto& [label, count] : p.buckets)
            buckets[label] = count;
        pairs.push_back(Json{{"pair", Json::array({p.from, p.to})},
                             {"adjacent", p.adjacent},
                             {"buckets", buckets}});
    }
    return Json{{"ok", r.ok},
                {"regime", to_string(r.regime.regime)},
                {"pairs", pairs},
                {"violations", r.violations},
                {"warnings", r.warnings}};
}

inline void print_validation(std::ostream& out, const DecompositionReport& r)
{
    out << "regime: " << to_string(r.regime.regime)
        << (r.regime.ok ? " accepted" : " rejected") << "\n";
    for (const auto& [pair, min_label] : r.regime.pair_minima)
        out << "pair (" << pair.first << " -> " << pair.second
            << "): minimal label " << min_label << "\n";
    for (const auto& p : r.pairs) {
        out << "pair (" << p.from << " -> " << p.to << "): ";
        bool first = true;
        for (const auto& [label, count] : p.buckets) {
            if (!first)
                out << ", ";
            first = false;
            out << "C_" << label << " x" << count;
        }
        if (!p.adjacent)
            out << "  [not adjacent]";
        out << "\n";
    }
    for (const auto& w : r.warnings)
        out << "warning: " << w << "\n";
    for (const auto& v : r.violations)
        out << "violation: " << v << "\n";
    out << (r.ok ? "valid\n" : "invalid\n");
}

/// One line per nonzero entry, ordered by source degree, then ids.
template <class R>
std::vector<std::string> block_lines(const PConnectionMatrix<R>& m)
{
    std::map<std::string, int> degree_of;
    for (const auto& [k, gens] : m.module.generators)
        for (const auto& g : gens)
            degree_of[g] = k;
    std::map<std::tuple<int, std::string, std::string>, std::string> lines;
    for (const auto& [pair, b] : m.blocks)
        for (const auto& [key, v] : b.entries()) {
            const std::string& row = b.row_ids()[key.first];
            const std::string& col = b.col_ids()[key.second];
            lines[{degree_of.at(col), col, row}] =
                "(" + col + " -> " + row + "): " + ring_to_string(v);
        }
    std::vector<std::string> out;
    for (const auto& [key, line] : lines)
        out.push_back(line);
    return out;
}

template <class R>
void print_assembly(std::ostream& out, const PConnectionMatrix<R>& m)
{
    auto lines = block_lines(m);
    if (lines.empty()) {
        out << "NDelta = 0\n";
        return;
    }
    for (const auto& line : lines)
        out << line << "\n";
    if (!m.skipped_records.empty())
        out << "note: " << m.skipped_records.size()
            << " record(s) between non-adjacent sets were excluded\n";
}

inline void print_projection(std::ostream& out, const ClassicalProjection& p)
{
    std::map<std::tuple<std::string, std::string>, Int> entries;
    for (const auto& [pair, b] : p.blocks)
        for (const auto& [key, v] : b.entries())
            entries[{b.col_ids()[key.second], b.row_ids()[key.first]}] = v;
    if (entries.empty()) {
        out << "projection = 0\n";
    } else {
        for (const auto& [key, v] : entries)
            out << "(" << std::get<0>(key) << " -> " << std::get<1>(key)
                << "): " << v.str() << "\n";
    }
    out << "projection square commutes: "
        << (p.square_commutes ? "yes" : "no") << "\n";
    if (!p.exact)
        out << "note: some entries were truncated series; the projection "
               "sums only retained coefficients\n";
}

inline Json projection_to_json(const ClassicalProjection& p)
{
    Json blocks = Json::array();
    for (const auto& [pair, b] : p.blocks) {
        Json entries = Json::array();
        for (const auto& [key, v] : b.entries())
            entries.push_back(Json{{"row", b.row_ids()[key.first]},
                                   {"col", b.col_ids()[key.second]},
                                   {"value", int_to_json(v)}});
        blocks.push_back(Json{{"from", pair.first},
                              {"to", pair.second},
                              {"entries", entries}});
    }
    return Json{{"blocks", blocks},
                {"exact", p.exact},
                {"square_commutes", p.square_commutes}};
}

inline std::string int_homology_to_string(const IntHomology& h)
{
    std::string out;
    if (h.betti > 0)
        out = h.betti == 1 ? "Z" : "Z^" + std::to_string(h.betti);
    for (const auto& d : h.torsion)
        out += (out.empty() ? "" : " + ") + std::string("Z/") + d.str();
    return out.empty() ? "0" : out;
}

inline std::string novikov_homology_to_string(const NovikovHomology& h)
{
    std::string out;
    if (h.free_rank > 0)
        out = h.free_rank == 1 ? "Z((t))"
                               : "Z((t))^" + std::to_string(h.free_rank);
    for (const auto& d : h.divisors)
        out += (out.empty() ? "" : " + ") + std::string("Z((t))/(") +
               d.to_string() + ")";
    return out.empty() ? "0" : out;
}

// -- reference comparison -------------------------------------------------

struct ReferenceVerdict {
    bool checked = false;
    bool matches = true;
    std::vector<std::string> mismatches;
};

inline ReferenceVerdict
compare_reference(const ClassicalProjection& p,
                  const std::map<std::pair<std::string, std::string>, Int>&
                      reference)
{
    ReferenceVerdict v;
    v.checked = true;
    std::map<std::pair<std::string, std::string>, Int> got;
    for (const auto& [pair, b] : p.blocks)
        for (const auto& [key, value] : b.entries())
            got[{b.row_ids()[key.first], b.col_ids()[key.second]}] = value;
    for (const auto& [key, value] : reference)
        if (!got.count(key) || got.at(key) != value) {
            v.matches = false;
            v.mismatches.push_back("(" + key.second + " -> " + key.first +
                                   ")");
        }
    for (const auto& [key, value] : got)
        if (!reference.count(key)) {
            v.matches = false;
            v.mismatches.push_back("(" + key.second + " -> " + key.first +
                                   ")");
        }
    return v;
}

// -- per-kind drivers -----------------------------------------------------

struct LoadedInput {
    InputKind kind;
    Json document;
};

inline LoadedInput load_input(const RunConfig& cfg)
{
    Json j = load_json_file(cfg.input);
    return {input_kind(j), std::move(j)};
}

/// Runs `f` with the decomposition view of the input; circle-valued data
/// is wrapped as a decomposition over the infinite cyclic group.
template <class F>
int with_decomposition(const LoadedInput& in, F&& f)
{
    switch (in.kind) {
    case InputKind::morse_decomposition:
        return f(decomposition_from_json(in.document));
    case InputKind::circle_morse_data:
        return f(decomposition_from_circle(circle_from_json(in.document)));
    default:
        throw validation_error(
            "this command needs a morse_decomposition or circle_morse_data "
            "input");
    }
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    if (in.kind == InputKind::morse_data) {
        build_morse_complex(morse_data_from_json(in.document));
        if (cfg.format == "json")
            out << Json{{"ok", true}}.dump(2) << "\n";
        else
            out << "valid\n";
        return kExitOk;
    }
    if (in.kind == InputKind::p_connection_matrix) {
        bool square = false;
        if (get_field(in.document, "ring").get<std::string>() == "novikov")
            square = verify_boundary_squared(
                         artifact_from_json<NovikovSeries>(in.document)
                             .complex)
                         .ok;
        else
            square = verify_boundary_squared(
                         artifact_from_json<GroupRingElem>(in.document)
                             .complex)
                         .ok;
        if (cfg.format == "json")
            out << Json{{"ok", true}, {"boundary_squared_zero", square}}
                       .dump(2)
                << "\n";
        else
            out << "valid (boundary square "
                << (square ? "vanishes" : "reported nonzero") << ")\n";
        return kExitOk;
    }
    return with_decomposition(in, [&](const MorseDecomposition& d) {
        auto report = validate_decomposition(d);
        if (cfg.format == "json")
            out << validation_to_json(report).dump(2) << "\n";
        else
            print_validation(out, report);
        return report.ok ? kExitOk : kExitSemantic;
    });
}

template <class F>
int with_assembled(const RunConfig& cfg, const LoadedInput& in, F&& f)
{
    return with_decomposition(in, [&](const MorseDecomposition& d) {
        if (d.group->kind() == GroupKind::infinite_cyclic) {
            auto m = assemble_ndelta(d, NovikovCoefficients{cfg.precision});
            return f(m);
        }
        auto m = assemble_ndelta(d, GroupRingCoefficients{});
        return f(m);
    });
}

inline int cmd_assemble(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    if (in.kind == InputKind::morse_data) {
        auto complex = build_morse_complex(morse_data_from_json(in.document));
        for (const auto& [k, b] : complex.boundary)
            for (const auto& [key, v] : b.entries())
                out << "(" << b.col_ids()[key.second] << " -> "
                    << b.row_ids()[key.first] << "): " << v.str() << "\n";
        return kExitOk;
    }
    return with_assembled(cfg, in, [&](const auto& m) {
        Json artifact = artifact_to_json(m);
        if (cfg.format == "json")
            out << artifact.dump(2) << "\n";
        else
            print_assembly(out, m);
        if (!cfg.output.empty()) {
            std::ofstream file(cfg.output);
            if (!file)
                throw validation_error("cannot write output file '" +
                                       cfg.output + "'");
            file << artifact.dump(2) << "\n";
        }
        return kExitOk;
    });
}

/// Runs `f` on the assembled matrix view of the input; decompositions and
/// circle data are assembled on the fly, stored artifacts are reloaded.
template <class F>
int with_matrix(const RunConfig& cfg, const LoadedInput& in, F&& f)
{
    if (in.kind == InputKind::p_connection_matrix) {
        if (get_field(in.document, "ring").get<std::string>() == "novikov")
            return f(artifact_from_json<NovikovSeries>(in.document));
        return f(artifact_from_json<GroupRingElem>(in.document));
    }
    return with_assembled(cfg, in, std::forward<F>(f));
}

inline int cmd_project(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    return with_matrix(cfg, in, [&](const auto& m) {
        auto projection = project_classical(m);
        ReferenceVerdict verdict;
        if (!cfg.reference.empty())
            verdict = compare_reference(
                projection,
                classical_reference_from_json(load_json_file(cfg.reference)));
        if (cfg.format == "json") {
            Json j = projection_to_json(projection);
            if (verdict.checked) {
                j["matches_reference"] = verdict.matches;
                j["reference_mismatches"] = verdict.mismatches;
            }
            out << j.dump(2) << "\n";
        } else {
            print_projection(out, projection);
            if (verdict.checked) {
                if (verdict.matches)
                    out << "matches reference\n";
                else {
                    out << "differs from reference at:";
                    for (const auto& m2 : verdict.mismatches)
                        out << " " << m2;
                    out << "\n";
                }
            }
        }
        return verdict.checked && !verdict.matches ? kExitSemantic : kExitOk;
    });
}

inline int cmd_homology(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    if (in.kind == InputKind::morse_data) {
        auto complex = build_morse_complex(morse_data_from_json(in.document));
        auto h = homology_over_Z(complex);
        if (cfg.format == "json") {
            Json j = Json::object();
            for (const auto& [k, hk] : h)
                j[std::to_string(k)] = int_homology_to_string(hk);
            out << j.dump(2) << "\n";
        } else {
            for (const auto& [k, hk] : h)
                out << "H_" << k << " = " << int_homology_to_string(hk)
                    << "\n";
        }
        return kExitOk;
    }
    auto print_novikov = [&](const PConnectionMatrix<NovikovSeries>& m) {
        const long long precision = m.precision.value_or(cfg.precision);
        if (!verify_boundary_squared(m.complex).ok)
            throw validation_error("not a complex");
        auto h = homology_over_novikov(m.complex);
        if (cfg.format == "json") {
            Json j = Json::object();
            for (const auto& [k, hk] : h)
                j[std::to_string(k)] = novikov_homology_to_string(hk);
            Json wrap{{"precision", precision}, {"homology", j}};
            out << wrap.dump(2) << "\n";
        } else {
            bool all_zero = true;
            for (const auto& [k, hk] : h)
                all_zero =
                    all_zero && hk.free_rank == 0 && hk.divisors.empty();
            if (all_zero) {
                out << "H_k = 0 for all k (precision " << precision
                    << ")\n";
            } else {
                for (const auto& [k, hk] : h)
                    out << "H_" << k << " = "
                        << novikov_homology_to_string(hk) << "\n";
                out << "(precision " << precision << ")\n";
            }
        }
        return kExitOk;
    };
    if (in.kind == InputKind::p_connection_matrix) {
        if (get_field(in.document, "ring").get<std::string>() != "novikov")
            throw validation_error(
                "homology over this group ring is not computed; only "
                "validation, assembly and projection are available");
        return print_novikov(artifact_from_json<NovikovSeries>(in.document));
    }
    return with_decomposition(in, [&](const MorseDecomposition& d) {
        if (d.group->kind() != GroupKind::infinite_cyclic)
            throw validation_error(
                "homology over this group ring is not computed; only "
                "validation, assembly and projection are available");
        auto m = assemble_ndelta(d, NovikovCoefficients{cfg.precision});
        return print_novikov(m);
    });
}

inline int cmd_tower(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    CircleMorseData data;
    if (in.kind == InputKind::circle_morse_data)
        data = circle_from_json(in.document);
    else if (in.kind == InputKind::morse_decomposition)
        data = circle_from_decomposition(
            decomposition_from_json(in.document));
    else
        throw validation_error(
            "the tower command needs circle_morse_data or an infinite "
            "cyclic morse_decomposition");

    auto tower = truncation_tower(data, cfg.levels);
    auto complex = build_novikov_complex(data, cfg.precision);
    auto compare = compare_tower_limit(tower, complex);

    if (cfg.format == "json") {
        Json levels = Json::array();
        for (long long l = 0; l <= tower.top_level; ++l) {
            Json entries = Json::array();
            const auto& stage = tower.levels[static_cast<std::size_t>(l)];
            for (const auto& [k, b] : stage.boundary)
                for (const auto& [key, v] : b.entries())
                    entries.push_back(
                        Json{{"row", b.row_ids()[key.first]},
                             {"col", b.col_ids()[key.second]},
                             {"value", novikov_to_json(v)}});
            levels.push_back(Json{{"level", l}, {"entries", entries}});
        }
        Json j{{"levels", levels},
               {"stabilized", tower.stabilized},
               {"stabilization_level", tower.stabilization_level},
               {"max_record_level", tower.max_record_level},
               {"matches_limit", compare.ok}};
        out << j.dump(2) << "\n";
    } else {
        for (long long l = 0; l <= tower.top_level; ++l) {
            out << "level " << l << ":";
            const auto& stage = tower.levels[static_cast<std::size_t>(l)];
            bool any = false;
            for (const auto& [k, b] : stage.boundary)
                for (const auto& [key, v] : b.entries()) {
                    out << " (" << b.col_ids()[key.second] << " -> "
                        << b.row_ids()[key.first] << "): " << v.to_string()
                        << ";";
                    any = true;
                }
            if (!any)
                out << " 0";
            out << "\n";
        }
        if (tower.stabilized)
            out << "stabilization level: " << tower.stabilization_level
                << "\n";
        else
            out << "stabilization not reached (deepest record at level "
                << tower.max_record_level << ")\n";
        out << "tower matches the truncated boundary at every level: "
            << (compare.ok ? "yes" : "no") << "\n";
    }
    return compare.ok ? kExitOk : kExitSemantic;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out)
{
    LoadedInput in = load_input(cfg);
    if (in.kind != InputKind::morse_decomposition &&
        in.kind != InputKind::circle_morse_data)
        throw validation_error(
            "the report command needs a morse_decomposition or "
            "circle_morse_data input");
    return with_decomposition(in, [&](const MorseDecomposition& d) {
        auto report = validate_decomposition(d);
        if (cfg.format != "json") {
            out << "== validation ==\n";
            print_validation(out, report);
        }
        if (!report.ok) {
            if (cfg.format == "json")
                out << Json{{"validation", validation_to_json(report)}}.dump(2)
                    << "\n";
            return kExitSemantic;
        }
        Json j;
        j["validation"] = validation_to_json(report);
        int rc = with_assembled(cfg, in, [&](const auto& m) -> int {
            if (cfg.format != "json") {
                out << "== assembly ==\n";
                print_assembly(out, m);
            } else {
                j["assembly"] = artifact_to_json(m);
            }
            auto projection = project_classical(m);
            if (cfg.format != "json") {
                out << "== projection ==\n";
                print_projection(out, projection);
            } else {
                j["projection"] = projection_to_json(projection);
            }
            auto square = verify_boundary_squared(m.complex);
            if (cfg.format != "json")
                out << "== boundary square ==\n"
                    << (square.ok ? "vanishes\n"
                                  : "nonzero (reported, see entries)\n");
            else
                j["boundary_squared_zero"] = square.ok;
            using Ring = typename std::decay_t<decltype(m)>::Ring;
            if constexpr (std::is_same_v<Ring, NovikovSeries>) {
                if (square.ok) {
                    auto h = homology_over_novikov(m.complex);
                    if (cfg.format != "json") {
                        out << "== homology ==\n";
                        for (const auto& [k, hk] : h)
                            out << "H_" << k << " = "
                                << novikov_homology_to_string(hk) << "\n";
                        out << "(precision "
                            << m.precision.value_or(cfg.precision) << ")\n";
                    } else {
                        Json hj = Json::object();
                        for (const auto& [k, hk] : h)
                            hj[std::to_string(k)] =
                                novikov_homology_to_string(hk);
                        j["homology"] = hj;
                    }
                }
            }
            return kExitOk;
        });
        if (cfg.format == "json")
            out << j.dump(2) << "\n";
        return rc == 0 ? kExitOk : kExitSemantic;
    });
}

} // namespace cli_detail

/// Command-line front end: parses arguments, dispatches the subcommand and
/// maps thrown errors onto the exit-code contract.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err)
{
    CLI::App app{"connection matrices of Morse decompositions over regular "
                 "covers"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", cfg.input, "input JSON file")->required();
        cmd->add_option("--precision", cfg.precision,
                        "retained exponents for series arithmetic")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"human", "json"}));
    };

    auto* validate = app.add_subcommand("validate", "check an input file");
    add_common(validate);
    auto* assemble =
        app.add_subcommand("assemble", "assemble the connection matrix");
    add_common(assemble);
    assemble->add_option("--output", cfg.output,
                         "write the assembled matrix as JSON");
    auto* project = app.add_subcommand(
        "project", "collapse coefficients to the classical matrix");
    add_common(project);
    project->add_option("--reference", cfg.reference,
                        "classical reference matrix to compare against");
    auto* homology =
        app.add_subcommand("homology", "homology of the assembled complex");
    add_common(homology);
    auto* tower = app.add_subcommand(
        "tower", "finite truncation stages of the Novikov boundary");
    add_common(tower);
    tower->add_option("--levels", cfg.levels, "top truncation level")
        ->check(CLI::NonNegativeNumber);
    auto* report =
        app.add_subcommand("report", "validation, assembly and projection");
    add_common(report);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (validate->parsed())
            return cli_detail::cmd_validate(cfg, out);
        if (assemble->parsed())
            return cli_detail::cmd_assemble(cfg, out);
        if (project->parsed())
            return cli_detail::cmd_project(cfg, out);
        if (homology->parsed())
            return cli_detail::cmd_homology(cfg, out);
        if (tower->parsed())
            return cli_detail::cmd_tower(cfg, out);
        if (report->parsed())
            return cli_detail::cmd_report(cfg, out);
    } catch (const schema_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const precision_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const Json::exception& e) {
        err << "error: malformed document: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitSemantic;
    }
    err << "error: no command\n";
    return kExitParse;
}

} // namespace pconn
