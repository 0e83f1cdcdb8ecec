#include "tmdist/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tmdist/digits.hpp"
#include "tmdist/farey.hpp"
#include "tmdist/gowers.hpp"
#include "tmdist/lod.hpp"
#include "tmdist/metrics.hpp"
#include "tmdist/parallel.hpp"

namespace tmdist {

const std::string* find_param(const ParamMap& params, const std::string& key) {
    for (const auto& [k, v] : params)
        if (k == key) return &v;
    return nullptr;
}

std::string param_or(const ParamMap& params, const std::string& key, const std::string& fallback) {
    const std::string* v = find_param(params, key);
    return v ? *v : fallback;
}

namespace {

std::int64_t param_i64(const ParamMap& p, const std::string& key) {
    const std::string* v = find_param(p, key);
    if (!v) throw std::invalid_argument("missing parameter: " + key);
    return std::stoll(*v);
}

std::int64_t param_i64_or(const ParamMap& p, const std::string& key, std::int64_t fb) {
    const std::string* v = find_param(p, key);
    return v ? std::stoll(*v) : fb;
}

Rational param_rational(const ParamMap& p, const std::string& key) {
    const std::string* v = find_param(p, key);
    if (!v) throw std::invalid_argument("missing parameter: " + key);
    return Rational::parse(*v);
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string records_to_csv(std::span<const ExperimentRecord> records) {
    // column union over all params, in first-seen order
    std::vector<std::string> keys;
    for (const auto& r : records)
        for (const auto& [k, v] : r.params)
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::string out = "experiment";
    for (const auto& k : keys) out += "," + csv_escape(k);
    out += ",value,exact,wall_time_ms,seed\n";
    for (const auto& r : records) {
        out += csv_escape(r.experiment);
        for (const auto& k : keys) {
            const std::string* v = find_param(r.params, k);
            out += ",";
            if (v) out += csv_escape(*v);
        }
        out += "," + csv_escape(r.value);
        out += r.exact ? ",true" : ",false";
        out += "," + std::to_string(r.wall_time_ms);
        out += ",";
        if (r.seed) out += std::to_string(*r.seed);
        out += "\n";
    }
    return out;
}

std::string records_to_json(std::span<const ExperimentRecord> records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        obj["experiment"] = r.experiment;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        obj["params"] = params;
        obj["value"] = r.value;
        obj["exact"] = r.exact;
        obj["wall_time_ms"] = r.wall_time_ms;
        if (r.seed)
            obj["seed"] = *r.seed;
        else
            obj["seed"] = nullptr;
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::vector<ExperimentRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return {};
    std::vector<std::string> cols = split_csv_line(line);
    if (cols.size() < 5 || cols.front() != "experiment")
        throw std::invalid_argument("records_from_csv: bad header");
    const std::size_t nparams = cols.size() - 5;
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != cols.size()) throw std::invalid_argument("records_from_csv: ragged row");
        ExperimentRecord r;
        r.experiment = f[0];
        for (std::size_t i = 0; i < nparams; ++i)
            if (!f[1 + i].empty()) r.params.emplace_back(cols[1 + i], f[1 + i]);
        r.value = f[1 + nparams];
        r.exact = f[2 + nparams] == "true";
        r.wall_time_ms = std::stoll(f[3 + nparams]);
        if (!f[4 + nparams].empty()) r.seed = std::stoull(f[4 + nparams]);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// experiment registry
// ---------------------------------------------------------------------------

namespace {

RunOutput run_discrepancy(const ParamMap& p) {
    Rational v = discrepancy(param_rational(p, "alpha"), param_i64(p, "N"));
    return {v.to_string(), true};
}

RunOutput run_mean_discrepancy(const ParamMap& p) {
    MeanMode mode = param_or(p, "mode", "discrete") == "discrete" ? MeanMode::discrete
                                                                  : MeanMode::continuous_sampled;
    Rational v = mean_discrepancy_sum(static_cast<unsigned>(param_i64(p, "mu")), param_i64(p, "N"), mode,
                                      param_i64_or(p, "grid", 0));
    return {v.to_string(), mode == MeanMode::discrete};
}

RunOutput run_box(const ParamMap& p) {
    BoxQuery q{param_i64_or(p, "j_lo", 0), param_i64(p, "j_hi"),
               param_rational(p, "alpha"),  param_rational(p, "beta"),
               param_i64(p, "t"),           param_i64(p, "T"),
               param_i64(p, "k"),           param_i64(p, "K")};
    BoxCount r = box_count(q);
    std::string quantity = param_or(p, "quantity", "count");
    if (quantity == "residual") return {r.residual.to_string(), true};
    return {std::to_string(r.count), true};
}

RunOutput run_carry(const ParamMap& p) {
    std::int64_t c = carry_census(param_i64_or(p, "i_lo", 0), param_i64(p, "i_hi"),
                                  static_cast<std::uint64_t>(param_i64(p, "r")), param_rational(p, "alpha"),
                                  param_rational(p, "beta"), static_cast<unsigned>(param_i64(p, "lambda")));
    return {std::to_string(c), true};
}

RunOutput run_vdc(const ParamMap& p) {
    std::int64_t N = param_i64(p, "N"), K = param_i64(p, "K"), R = param_i64(p, "R");
    std::vector<std::complex<double>> z(static_cast<std::size_t>(N));
    std::string kind = param_or(p, "kind", "tm");
    if (kind == "tm") {
        for (std::int64_t n = 0; n < N; ++n) z[static_cast<std::size_t>(n)] = tm_sign(static_cast<std::uint64_t>(n));
    } else {
        std::uint64_t seed = static_cast<std::uint64_t>(param_i64_or(p, "seed", 1));
        for (std::int64_t n = 0; n < N; ++n) {
            seed += 0x9e3779b97f4a7c15ull;
            std::uint64_t u = seed;
            u = (u ^ (u >> 30)) * 0xbf58476d1ce4e5b9ull;
            u = (u ^ (u >> 27)) * 0x94d049bb133111ebull;
            u ^= u >> 31;
            double angle = static_cast<double>(u >> 11) / 9007199254740992.0 * 6.283185307179586;
            double mag = static_cast<double>((u & 2047)) / 2047.0;
            z[static_cast<std::size_t>(n)] = std::polar(mag, angle);
        }
    }
    VdcResult r = vdc_check(z, K, R);
    std::string quantity = param_or(p, "quantity", "margin");
    if (quantity == "ok") return {r.ok ? "1" : "0", true};
    return {fmt_double(r.rhs - r.lhs), false};
}

RunOutput run_farey_census(const ParamMap& p) {
    Rational v = q_divisibility_measure(param_i64(p, "K"), static_cast<unsigned>(param_i64(p, "gamma")),
                                        param_i64_or(p, "grid", 1));
    return {v.to_string(), true};
}

RunOutput run_exceptions(const ParamMap& p) {
    CensusMode mode = param_or(p, "mode", "discrete") == "discrete" ? CensusMode::discrete
                                                                    : CensusMode::continuous_sampled;
    CensusResult r = exceptions_census(
        static_cast<unsigned>(param_i64(p, "lambda")), static_cast<unsigned>(param_i64(p, "mu")),
        static_cast<unsigned>(param_i64(p, "sigma")), static_cast<unsigned>(param_i64(p, "gamma")),
        static_cast<int>(param_i64(p, "m")), mode, static_cast<unsigned>(param_i64_or(p, "grid_log2", 0)));
    std::string quantity = param_or(p, "quantity", "count");
    if (quantity == "measure") return {r.measure.to_string(), mode == CensusMode::discrete};
    return {std::to_string(r.exceptional), true};
}

RunOutput run_lod_total(const ParamMap& p) {
    std::uint64_t budget = static_cast<std::uint64_t>(param_i64_or(p, "budget", std::int64_t(1) << 36));
    LoDSummary s = lod_error_total(param_i64(p, "x"), std::stod(param_or(p, "theta", "0.5")), budget);
    return {s.total.to_string(), true};
}

RunOutput run_ap_extremes(const ParamMap& p) {
    APWindowStat st = ap_signed_prefix_extremes(param_i64(p, "d"), param_i64(p, "a"), param_i64(p, "x"));
    return {st.max_dev.to_string(), true};
}

RunOutput run_beatty(const ParamMap& p) {
    std::uint64_t c = beatty_count(static_cast<std::uint64_t>(param_i64_or(p, "y", 0)),
                                   static_cast<std::uint64_t>(param_i64(p, "z")),
                                   param_rational(p, "alpha"), param_rational(p, "beta"));
    return {std::to_string(c), true};
}

RunOutput run_s0_discrete(const ParamMap& p) {
    std::int64_t N = param_i64(p, "N");
    std::int64_t d_lo = param_i64_or(p, "d_lo", 0), d_hi = param_i64_or(p, "d_hi", 0);
    if (!d_lo) {
        std::int64_t D = param_i64_or(p, "D", N);
        d_lo = D;
        d_hi = 2 * D;
    }
    S0Strategy st = S0Strategy::structured_max();
    if (param_or(p, "strategy", "structured") == "capped")
        st = S0Strategy::capped(static_cast<std::uint64_t>(param_i64_or(p, "cap", 1024)));
    S0Result r = s0_discrete(N, d_lo, d_hi, std::stod(param_or(p, "xi", "0")), st);
    return {r.exact ? r.value.to_string() : fmt_double(r.value_d), r.exact};
}

RunOutput run_s0_beatty(const ParamMap& p) {
    BetaStrategy bs = BetaStrategy::exact_breakpoints();
    if (param_or(p, "beta_strategy", "breakpoints") == "grid")
        bs = BetaStrategy::uniform_grid(param_i64_or(p, "beta_grid", 256));
    S0BeattyResult r = s0_beatty(param_i64(p, "N"), param_rational(p, "D"),
                                 std::stod(param_or(p, "xi", "0")), param_i64_or(p, "alpha_grid", 16), bs);
    return {r.value.to_string(), r.exact};
}

RunOutput run_pshapiro(const ParamMap& p) {
    PSExperiment e = ps_frequency(param_rational(p, "c"), static_cast<std::uint64_t>(param_i64(p, "N")));
    std::string quantity = param_or(p, "quantity", "deviation");
    if (quantity == "freq0") return {e.freq0.to_string(), true};
    if (quantity == "excluded") return {std::to_string(e.excluded), true};
    return {e.deviation.to_string(), true};
}

RunOutput run_gowers_brute(const ParamMap& p) {
    int m = static_cast<int>(param_i64(p, "m"));
    Dyadic v = gowers_bruteforce(m, static_cast<unsigned>(param_i64(p, "rho")), OffsetFamily::zero(m));
    return {v.to_string(), true};
}

RunOutput run_gowers_recursion(const ParamMap& p) {
    int m = static_cast<int>(param_i64(p, "m"));
    GowersGraph g = build_graph(m);
    Dyadic v = recursion_value(g, static_cast<unsigned>(param_i64(p, "rho")), OffsetFamily::zero(m));
    return {v.to_string(), true};
}

RunOutput run_gowers_contract(const ParamMap& p) {
    int m = static_cast<int>(param_i64(p, "m"));
    unsigned k_max = static_cast<unsigned>(param_i64_or(p, "k_max", 20));
    GowersGraph g = build_graph(m);
    ContractionResult r = contraction_check(g, k_max);
    std::string quantity = param_or(p, "quantity", "c_star");
    if (quantity == "k_star") {
        if (!r.k_star) return {"none", true};
        return {std::to_string(*r.k_star), true};
    }
    if (quantity == "eta") {
        if (!r.k_star) return {"none", false};
        unsigned rho_max = (g.m == 2) ? 7 : 4;
        std::vector<Dyadic> a0;
        int zero_idx = g.index_of(OffsetFamily::zero(g.m));
        for (unsigned rho = 0; rho <= rho_max; ++rho)
            a0.push_back(recursion_values(g, rho)[static_cast<std::size_t>(zero_idx)]);
        return {fmt_double(decay_rate(g, *r.k_star, r.c_star, a0)), false};
    }
    return {r.c_star.to_string(), true};
}

}  // namespace

const std::map<std::string, Runner>& experiment_registry() {
    static const std::map<std::string, Runner> registry = {
        {"discrepancy", run_discrepancy},
        {"mean_discrepancy", run_mean_discrepancy},
        {"box", run_box},
        {"carry", run_carry},
        {"vdc", run_vdc},
        {"farey_census", run_farey_census},
        {"exceptions", run_exceptions},
        {"lod_total", run_lod_total},
        {"ap_extremes", run_ap_extremes},
        {"beatty_count", run_beatty},
        {"s0_discrete", run_s0_discrete},
        {"s0_beatty", run_s0_beatty},
        {"pshapiro", run_pshapiro},
        {"gowers_brute", run_gowers_brute},
        {"gowers_recursion", run_gowers_recursion},
        {"gowers_contract", run_gowers_contract},
    };
    return registry;
}

RunOutput run_experiment(const std::string& name, const ParamMap& params) {
    const auto& reg = experiment_registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw std::invalid_argument("unknown experiment: " + name);
    return it->second(params);
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> expand_grid_token(const std::string& tok) {
    if (tok.rfind("geom:", 0) == 0) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : tok.substr(5)) {
            if (c == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        if (parts.size() != 3) throw std::invalid_argument("bad geometric range: " + tok);
        long long first = std::stoll(parts[0]), last = std::stoll(parts[1]), factor = std::stoll(parts[2]);
        if (first < 1 || factor < 2) throw std::invalid_argument("bad geometric range: " + tok);
        std::vector<std::string> out;
        for (long long v = first; v <= last; v *= factor) out.push_back(std::to_string(v));
        return out;
    }
    auto caret = tok.find('^');
    if (caret != std::string::npos && tok.substr(0, caret) == "2") {
        unsigned k = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
        if (k > 62) throw std::invalid_argument("bad power token: " + tok);
        return {std::to_string(1ull << k)};
    }
    return {tok};
}

std::vector<std::string> parse_grid(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            for (auto& v : expand_grid_token(cur)) out.push_back(v);
            cur.clear();
        }
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    flush();
    return out;
}

bool is_geometric(const std::vector<std::string>& values) {
    if (values.size() < 3) return false;
    std::vector<long double> v;
    for (const auto& s : values) {
        try {
            v.push_back(std::stold(s));
        } catch (...) {
            return false;
        }
    }
    for (long double x : v)
        if (x <= 0) return false;
    long double r = v[1] / v[0];
    if (r <= 1) return false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (std::fabs(static_cast<double>(v[i + 1] / v[i] - r)) > 1e-9 * static_cast<double>(r)) return false;
    return true;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad config line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "experiment")
            cfg.experiment = val;
        else if (key == "out")
            cfg.out_path = val;
        else if (key == "format")
            cfg.format = val;
        else if (key == "threads")
            cfg.threads = static_cast<unsigned>(std::stoul(val));
        else if (key == "budget")
            cfg.budget = std::stoull(val);
        else if (key == "seed")
            cfg.seed = std::stoull(val);
        else if (key == "timing")
            cfg.record_timing = (val == "on" || val == "1" || val == "true");
        else
            cfg.grids.emplace_back(key, parse_grid(val));
    }
    if (cfg.experiment.empty()) throw std::invalid_argument("sweep config: missing experiment");
    for (const auto& [k, g] : cfg.grids)
        if (g.empty()) throw std::invalid_argument("sweep config: empty grid for " + k);
    if (!cfg.budget) throw std::invalid_argument("sweep config: budget must be positive");
    return cfg;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
    const auto& reg = experiment_registry();
    if (!reg.count(config.experiment))
        throw std::invalid_argument("unknown experiment: " + config.experiment);
    // only these draw random inputs; everything else is a pure function of its grid point
    const bool randomized = config.experiment == "vdc";

    std::uint64_t npoints = 1;
    for (const auto& [k, g] : config.grids) npoints *= g.size();
    if (!npoints) return {};

    std::vector<ExperimentRecord> records(npoints);
    std::vector<std::string> errors(npoints);
    parallel_for(npoints, config.threads, [&](std::uint64_t idx) {
        // lexicographic decode, first grid key outermost
        ParamMap params;
        std::uint64_t rem = idx;
        std::uint64_t scale = npoints;
        for (const auto& [key, values] : config.grids) {
            scale /= values.size();
            params.emplace_back(key, values[static_cast<std::size_t>(rem / scale)]);
            rem %= scale;
        }
        if (!find_param(params, "budget")) params.emplace_back("budget", std::to_string(config.budget));
        if (randomized && !find_param(params, "seed"))
            params.emplace_back("seed", std::to_string(config.seed + idx));

        ExperimentRecord rec;
        rec.experiment = config.experiment;
        rec.params = params;
        if (randomized) rec.seed = config.seed + idx;
        auto t0 = std::chrono::steady_clock::now();
        try {
            RunOutput out = run_experiment(config.experiment, params);
            rec.value = out.value;
            rec.exact = out.exact;
        } catch (const BudgetExceeded&) {
            rec.value = "skipped";
            rec.exact = false;
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        rec.wall_time_ms =
            config.record_timing
                ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                : 0;
        records[idx] = std::move(rec);
    });
    for (const std::string& e : errors)
        if (!e.empty()) throw std::invalid_argument("sweep point failed: " + e);

    // slope summary when exactly one parameter varies geometrically
    const std::pair<std::string, std::vector<std::string>>* varying = nullptr;
    bool single = true;
    for (const auto& grid : config.grids) {
        if (grid.second.size() > 1) {
            if (varying) single = false;
            varying = &grid;
        }
    }
    if (varying && single && is_geometric(varying->second)) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records) {
            if (r.value == "skipped") continue;
            const std::string* x = find_param(r.params, varying->first);
            try {
                double xv = std::stod(*x);
                double yv = r.value.find('/') != std::string::npos
                                ? Rational::parse(r.value).to_double()
                                : std::stod(r.value);
                if (xv > 0 && yv > 0) pts.emplace_back(xv, yv);
            } catch (...) {
            }
        }
        if (pts.size() >= 2) {
            SlopeFit fit = slope_fit(pts);
            ExperimentRecord rec;
            rec.experiment = config.experiment + ".slope";
            rec.params = {{"variable", varying->first}, {"points", std::to_string(pts.size())}};
            rec.value = fmt_double(fit.slope);
            rec.exact = false;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace tmdist
