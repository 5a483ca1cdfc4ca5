#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "caspforge/encode.hpp"
#include "caspforge/generators.hpp"
#include "caspforge/solver.hpp"

namespace caspforge {

struct BenchBudgets {
    double time_s = 60.0;      // desk-scale default; the paper ran 600 s
    uint64_t conflicts = 0;    // 0 = unlimited
};

struct BenchParams {
    int n = 0;
    int ratio = 0;  // qcp only
};

struct BenchRecord {
    std::string family;
    std::string params;
    std::string encoding;
    int k = 0;
    std::string status;  // sat | unsat | unknown
    double time_s = 0.0;
    uint64_t decisions = 0;
    uint64_t conflicts = 0;
    uint64_t propagations = 0;
    uint64_t seed = 0;
    std::string note;
};

/// Accepts "direct"/"support"/"bound"/"range" with an optional ":k"
/// suffix, or the paper's shorthand D/S/B/R with an optional k digit
/// (e.g. "B3", "R1").
inline EncodingKind parse_encoding_spec(const std::string& spec) {
    std::string name = spec;
    int k = 0;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        k = std::stoi(spec.substr(colon + 1));
    } else if (spec.size() > 1 && (spec[0] == 'B' || spec[0] == 'R') &&
               std::isdigit(static_cast<unsigned char>(spec[1]))) {
        name = spec.substr(0, 1);
        k = std::stoi(spec.substr(1));
    }
    EncodingKind kind;
    kind.hall_k = k;
    if (name == "direct" || name == "D")
        kind.name = EncodingName::Direct;
    else if (name == "support" || name == "S")
        kind.name = EncodingName::Support;
    else if (name == "bound" || name == "B")
        kind.name = EncodingName::Bound;
    else if (name == "range" || name == "R")
        kind.name = EncodingName::Range;
    else
        throw Error("unknown encoding: " + spec);
    return kind;
}

inline CspInstance gen_family(const std::string& family, const BenchParams& p, uint64_t seed) {
    if (family == "pigeonhole") return gen_pigeonhole(p.n);
    if (family == "qcp") return gen_qcp(p.n, p.ratio, seed);
    if (family == "graceful") return gen_graceful_double_wheel(p.n);
    throw Error("unknown family: " + family);
}

/// One row per encoding for one generated instance. Sat models are
/// re-verified through evaluate; verification failures and generator
/// errors land in the note column with status unknown.
inline std::vector<BenchRecord> run_bench(const std::string& family, const BenchParams& params,
                                          const std::vector<std::string>& encodings,
                                          const BenchBudgets& budgets, uint64_t seed,
                                          const SolverConfig& base_cfg = {}) {
    std::vector<BenchRecord> rows;
    std::string param_str = "n=" + std::to_string(params.n);
    if (family == "qcp") param_str += ";ratio=" + std::to_string(params.ratio);

    for (const auto& spec : encodings) {
        BenchRecord row;
        row.family = family;
        row.params = param_str;
        row.seed = seed;
        try {
            const EncodingKind kind = parse_encoding_spec(spec);
            row.encoding = encoding_name(kind.name);
            const CspInstance raw = gen_family(family, params, seed);
            const auto norm = normalize(raw);
            const CspInstance& csp = norm.normalized;
            const Encoding enc = encode(csp, DomainState::full(csp), kind);
            row.k = enc.hall_k;
            const CompiledStore st = compile(enc.program);
            SolverConfig cfg = base_cfg;
            cfg.seed = seed;
            cfg.max_seconds = budgets.time_s;
            cfg.max_conflicts = budgets.conflicts;
            const SolveResult sr = solve(st, cfg);
            row.time_s = sr.stats.seconds;
            row.decisions = sr.stats.decisions;
            row.conflicts = sr.stats.conflicts;
            row.propagations = sr.stats.propagations;
            switch (sr.status) {
                case SolveStatus::Sat: {
                    row.status = "sat";
                    const Assignment normed = extract_solution(sr.model, enc, csp);
                    const Assignment orig = denormalize(normed, raw, norm.value_maps);
                    if (!evaluate(raw, orig).is_solution) {
                        row.status = "unknown";
                        row.note = "model verification failed";
                    }
                    break;
                }
                case SolveStatus::Unsat:
                    row.status = "unsat";
                    break;
                case SolveStatus::Unknown:
                    row.status = "unknown";
                    row.note = "budget exhausted";
                    break;
            }
        } catch (const std::exception& e) {
            row.status = "unknown";
            row.note = e.what();
            if (row.encoding.empty()) row.encoding = spec;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string bench_csv_header() {
    return "family,params,encoding,k,status,time_s,decisions,conflicts,propagations,seed,note";
}

inline std::string bench_csv(const std::vector<BenchRecord>& rows, bool header = true) {
    std::ostringstream os;
    if (header) os << bench_csv_header() << "\n";
    for (const auto& r : rows) {
        std::string note = r.note;
        for (auto& ch : note)
            if (ch == ',' || ch == '\n') ch = ';';
        os << r.family << "," << r.params << "," << r.encoding << "," << r.k << ","
           << r.status << "," << r.time_s << "," << r.decisions << "," << r.conflicts << ","
           << r.propagations << "," << r.seed << "," << note << "\n";
    }
    return os.str();
}

}  // namespace caspforge
