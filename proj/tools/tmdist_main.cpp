// tmdist: exact digit-sum, Farey, discrepancy, Gowers-graph and
// level-of-distribution experiments with reproducible CSV/JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tmdist/digits.hpp"
#include "tmdist/farey.hpp"
#include "tmdist/gowers.hpp"
#include "tmdist/harness.hpp"
#include "tmdist/lod.hpp"
#include "tmdist/metrics.hpp"

using namespace tmdist;

namespace {

struct OutputOpts {
    std::string path;
    std::string format = "csv";
};

void add_output_opts(CLI::App* cmd, OutputOpts& out) {
    cmd->add_option("--out", out.path, "write ExperimentRecord rows to this file");
    cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const std::vector<ExperimentRecord>& records, const OutputOpts& out) {
    if (out.path.empty()) return;
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out.path);
    f << (out.format == "json" ? records_to_json(records) : records_to_csv(records));
}

ExperimentRecord make_record(std::string experiment, ParamMap params, RunOutput result) {
    ExperimentRecord rec;
    rec.experiment = std::move(experiment);
    rec.params = std::move(params);
    rec.value = std::move(result.value);
    rec.exact = result.exact;
    return rec;
}

// run through the registry so CLI output and sweep output agree bit for bit
void run_and_emit(const std::string& name, const ParamMap& params, const OutputOpts& out,
                  const std::string& summary_label) {
    RunOutput r = run_experiment(name, params);
    std::printf("%s %s\n", summary_label.c_str(), r.value.c_str());
    emit({make_record(name, params, r)}, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thue-Morse distribution experiments"};
    app.require_subcommand(1);

    // --- digits ---
    auto* digits = app.add_subcommand("digits", "digit sums and Thue-Morse letters");
    std::uint64_t dg_n = 0;
    unsigned dg_base = 2, dg_lambda = 0, dg_mu = 0;
    digits->add_option("--n", dg_n, "argument")->required();
    digits->add_option("--base", dg_base, "digit base (default 2)");
    digits->add_option("--lambda", dg_lambda, "truncation exponent");
    digits->add_option("--mu", dg_mu, "lower truncation exponent");
    digits->callback([&] {
        std::printf("s_%u(%llu) = %u\n", dg_base, static_cast<unsigned long long>(dg_n),
                    sum_of_digits(dg_n, dg_base));
        if (dg_base == 2) {
            std::printf("t(n) = %u, sign = %+d\n", tm_bit(dg_n), tm_sign(dg_n));
            if (dg_lambda) {
                std::printf("s_lambda(n) = %u\n", truncated_digit_sum(dg_n, dg_lambda));
                std::printf("s_{mu,lambda}(n) = %u\n",
                            twofold_digit_sum(dg_n, TruncationWindow(dg_mu, dg_lambda)));
            }
        }
    });

    // --- farey ---
    auto* farey = app.add_subcommand("farey", "Farey dissection, censuses, exceptional set");
    farey->require_subcommand(1);
    {
        auto* ap = farey->add_subcommand("approx", "p_Q(alpha)/q_Q(alpha)");
        static std::string alpha;
        static std::string order;
        ap->add_option("--alpha", alpha, "rational, e.g. 5/8 or 1.25")->required();
        ap->add_option("--order", order, "dissection order Q")->required();
        ap->callback([&] {
            FareyApprox fa = farey_approx(Rational::parse(alpha), BigInt::from_decimal(order));
            std::printf("p=%s q=%s  |q alpha - p| < 1/Q verified\n", fa.p.to_decimal().c_str(),
                        fa.q.to_decimal().c_str());
        });

        auto* census = farey->add_subcommand("census", "measure of {x : 2^gamma | q_K(x)}");
        static std::int64_t cK = 16, cgrid = 1;
        static unsigned cgamma = 1;
        static OutputOpts cout_;
        census->add_option("--K", cK, "dissection order")->required();
        census->add_option("--gamma", cgamma, "divisibility exponent")->required();
        census->add_option("--grid", cgrid, "optional grid cross-check resolution");
        add_output_opts(census, cout_);
        census->callback([&] {
            ParamMap p{{"K", std::to_string(cK)}, {"gamma", std::to_string(cgamma)},
                       {"grid", std::to_string(cgrid)}};
            run_and_emit("farey_census", p, cout_, "measure =");
        });

        auto* exc = farey->add_subcommand("exceptions", "census of alpha with 2^{3gamma} | p_frak_i");
        static unsigned xl = 13, xm = 4, xs = 1, xg = 1, xgrid = 0;
        static int xmm = 2;
        static std::string xmode = "discrete";
        static OutputOpts xout;
        exc->add_option("--lambda", xl)->required();
        exc->add_option("--mu", xm)->required();
        exc->add_option("--sigma", xs)->required();
        exc->add_option("--gamma", xg)->required();
        exc->add_option("--m", xmm)->required();
        exc->add_option("--mode", xmode)->check(CLI::IsMember({"discrete", "continuous"}));
        exc->add_option("--grid-log2", xgrid, "continuous mode step is 2^-grid_log2");
        add_output_opts(exc, xout);
        exc->callback([&] {
            ParamMap p{{"lambda", std::to_string(xl)}, {"mu", std::to_string(xm)},
                       {"sigma", std::to_string(xs)},  {"gamma", std::to_string(xg)},
                       {"m", std::to_string(xmm)},     {"mode", xmode},
                       {"grid_log2", std::to_string(xgrid)}};
            run_and_emit("exceptions", p, xout, "|A| =");
        });
    }

    // --- discrepancy ---
    auto* disc = app.add_subcommand("discrepancy", "exact extreme discrepancy of {n alpha}");
    static std::string da;
    static std::int64_t dN = 16;
    static OutputOpts dout;
    disc->add_option("--alpha", da)->required();
    disc->add_option("--N", dN)->required();
    add_output_opts(disc, dout);
    disc->callback([&] {
        ParamMap p{{"alpha", da}, {"N", std::to_string(dN)}};
        run_and_emit("discrepancy", p, dout, "D_N =");
    });

    // --- box ---
    auto* box = app.add_subcommand("box", "fractional-part and residue box count");
    static std::string ba, bb;
    static std::int64_t bt = 0, bT = 1, bk = 0, bK = 1, bjlo = 0, bjhi = 0;
    static OutputOpts bout;
    box->add_option("--alpha", ba)->required();
    box->add_option("--beta", bb)->required();
    box->add_option("--t", bt)->required();
    box->add_option("--T", bT)->required();
    box->add_option("--k", bk)->required();
    box->add_option("--K", bK)->required();
    box->add_option("--j-lo", bjlo);
    box->add_option("--j-hi", bjhi)->required();
    add_output_opts(box, bout);
    box->callback([&] {
        BoxCount r = box_count(BoxQuery{bjlo, bjhi, Rational::parse(ba), Rational::parse(bb), bt, bT, bk, bK});
        std::printf("count = %lld, expected = %s, residual = %s\n", static_cast<long long>(r.count),
                    r.expected.to_string().c_str(), r.residual.to_string().c_str());
        ParamMap p{{"alpha", ba}, {"beta", bb},          {"t", std::to_string(bt)},
                   {"T", std::to_string(bT)}, {"k", std::to_string(bk)}, {"K", std::to_string(bK)},
                   {"j_lo", std::to_string(bjlo)}, {"j_hi", std::to_string(bjhi)}};
        emit({make_record("box", p, RunOutput{std::to_string(r.count), true})}, bout);
    });

    // --- carry ---
    auto* carry = app.add_subcommand("carry", "carry-propagation census");
    static std::string ca, cb;
    static std::int64_t cilo = 0, cihi = 256;
    static std::uint64_t cr = 1;
    static unsigned clam = 4;
    static OutputOpts carry_out;
    carry->add_option("--alpha", ca)->required();
    carry->add_option("--beta", cb)->required();
    carry->add_option("--r", cr)->required();
    carry->add_option("--lambda", clam)->required();
    carry->add_option("--i-lo", cilo);
    carry->add_option("--i-hi", cihi)->required();
    add_output_opts(carry, carry_out);
    carry->callback([&] {
        ParamMap p{{"i_lo", std::to_string(cilo)}, {"i_hi", std::to_string(cihi)},
                   {"r", std::to_string(cr)},      {"alpha", ca},
                   {"beta", cb},                   {"lambda", std::to_string(clam)}};
        run_and_emit("carry", p, carry_out, "count =");
    });

    // --- vdc ---
    auto* vdc = app.add_subcommand("vdc", "generalized van der Corput inequality check");
    static std::int64_t vN = 64, vK = 2, vR = 4;
    static std::string vkind = "tm";
    static std::uint64_t vseed = 20120624;
    static OutputOpts vout;
    vdc->add_option("--N", vN)->required();
    vdc->add_option("--K", vK)->required();
    vdc->add_option("--R", vR)->required();
    vdc->add_option("--kind", vkind)->check(CLI::IsMember({"tm", "random"}));
    vdc->add_option("--seed", vseed);
    add_output_opts(vdc, vout);
    vdc->callback([&] {
        ParamMap p{{"N", std::to_string(vN)}, {"K", std::to_string(vK)}, {"R", std::to_string(vR)},
                   {"kind", vkind},           {"seed", std::to_string(vseed)}};
        run_and_emit("vdc", p, vout, "rhs - lhs =");
    });

    // --- lod ---
    auto* lod = app.add_subcommand("lod", "level-of-distribution error sums");
    lod->require_subcommand(1);
    {
        auto* total = lod->add_subcommand("total", "sum over d <= x^theta of window extremes");
        static std::int64_t lx = 1 << 16;
        static double ltheta = 0.5;
        static std::uint64_t lbudget = std::uint64_t(1) << 36;
        static unsigned lthreads = 0;
        static OutputOpts lout;
        total->add_option("--x", lx)->required();
        total->add_option("--theta", ltheta)->required();
        total->add_option("--budget", lbudget, "refuse above this projected cost");
        total->add_option("--threads", lthreads);
        add_output_opts(total, lout);
        total->callback([&] {
            LoDSummary s = lod_error_total(lx, ltheta, lbudget, lthreads);
            std::printf("x=%lld D=%lld total = %s (~%.6g)\n", static_cast<long long>(s.x),
                        static_cast<long long>(s.D), s.total.to_string().c_str(), s.total.to_double());
            std::vector<ExperimentRecord> recs;
            for (const APWindowStat& st : s.per_d) {
                ParamMap p{{"x", std::to_string(lx)},      {"theta", std::to_string(ltheta)},
                           {"d", std::to_string(st.d)},    {"a", std::to_string(st.a)},
                           {"arg_y", std::to_string(st.arg_y)}, {"arg_z", std::to_string(st.arg_z)}};
                recs.push_back(make_record("lod_window", p, RunOutput{st.max_dev.to_string(), true}));
            }
            ParamMap p{{"x", std::to_string(lx)}, {"theta", std::to_string(ltheta)}};
            recs.push_back(make_record("lod_total", p, RunOutput{s.total.to_string(), true}));
            emit(recs, lout);
        });

        auto* s0 = lod->add_subcommand("s0", "S0 over arithmetic progressions");
        static std::int64_t sN = 64, sD = 0, sdlo = 0, sdhi = 0;
        static double sxi = 0.0;
        static std::string sstrat = "structured";
        static std::uint64_t scap = 1024;
        static OutputOpts sout;
        s0->add_option("--N", sN)->required();
        s0->add_option("--D", sD, "d ranges over [D, 2D); defaults to N");
        s0->add_option("--d-lo", sdlo);
        s0->add_option("--d-hi", sdhi);
        s0->add_option("--xi", sxi);
        s0->add_option("--strategy", sstrat)->check(CLI::IsMember({"structured", "capped"}));
        s0->add_option("--cap", scap, "capped strategy: search a < cap");
        add_output_opts(s0, sout);
        s0->callback([&] {
            ParamMap p{{"N", std::to_string(sN)}, {"xi", std::to_string(sxi)}, {"strategy", sstrat}};
            if (sdlo && sdhi) {
                p.emplace_back("d_lo", std::to_string(sdlo));
                p.emplace_back("d_hi", std::to_string(sdhi));
            } else {
                p.emplace_back("D", std::to_string(sD ? sD : sN));
            }
            if (sstrat == "capped") p.emplace_back("cap", std::to_string(scap));
            run_and_emit("s0_discrete", p, sout, "S0 =");
        });

        auto* bs0 = lod->add_subcommand("beatty-s0", "S0 over Beatty sequences (alpha integral)");
        static std::int64_t bN = 16, bgrid = 16, bbgrid = 256;
        static std::string bD = "4", bstrat = "breakpoints";
        static OutputOpts bsout;
        bs0->add_option("--N", bN)->required();
        bs0->add_option("--D", bD)->required();
        bs0->add_option("--alpha-grid", bgrid);
        bs0->add_option("--beta-strategy", bstrat)->check(CLI::IsMember({"breakpoints", "grid"}));
        bs0->add_option("--beta-grid", bbgrid);
        add_output_opts(bs0, bsout);
        bs0->callback([&] {
            ParamMap p{{"N", std::to_string(bN)},
                       {"D", bD},
                       {"alpha_grid", std::to_string(bgrid)},
                       {"beta_strategy", bstrat},
                       {"beta_grid", std::to_string(bbgrid)}};
            run_and_emit("s0_beatty", p, bsout, "S0 ~");
        });
    }

    // --- gowers ---
    auto* gowers = app.add_subcommand("gowers", "Gowers uniformity sums and graph analysis");
    gowers->require_subcommand(1);
    {
        static int gm = 2;
        static unsigned grho = 4, gkmax = 20;
        static OutputOpts gout;

        auto* brute = gowers->add_subcommand("brute", "direct summation of A_rho(0)");
        brute->add_option("--m", gm)->required();
        brute->add_option("--rho", grho)->required();
        add_output_opts(brute, gout);
        brute->callback([&] {
            ParamMap p{{"m", std::to_string(gm)}, {"rho", std::to_string(grho)}};
            run_and_emit("gowers_brute", p, gout, "A_rho(0) =");
        });

        auto* rec = gowers->add_subcommand("recursion", "A_rho(0) via the graph recursion");
        rec->add_option("--m", gm)->required();
        rec->add_option("--rho", grho)->required();
        add_output_opts(rec, gout);
        rec->callback([&] {
            ParamMap p{{"m", std::to_string(gm)}, {"rho", std::to_string(grho)}};
            run_and_emit("gowers_recursion", p, gout, "A_rho(0) =");
        });

        auto* graph = gowers->add_subcommand("graph", "adjacency listing of the reachable graph");
        static std::string gpath;
        graph->add_option("--m", gm)->required();
        graph->add_option("--out", gpath, "write the listing to this file");
        graph->callback([&] {
            GowersGraph g = build_graph(gm);
            std::ostringstream os;
            os << "m " << g.m << " vertices " << g.vertices.size() << "\n";
            for (std::size_t i = 0; i < g.vertices.size(); ++i) {
                os << i << " [";
                for (std::size_t e = 0; e < g.vertices[i].entries.size(); ++e)
                    os << (e ? "," : "") << g.vertices[i].entries[e];
                os << "] ->";
                for (std::size_t j = 0; j < g.vertices.size(); ++j) {
                    Dyadic w = g.weight(static_cast<int>(i), static_cast<int>(j));
                    if (!w.is_zero()) os << " " << j << ":" << w.to_string();
                }
                os << "\n";
            }
            if (gpath.empty()) {
                std::fputs(os.str().c_str(), stdout);
            } else {
                std::ofstream f(gpath, std::ios::binary);
                f << os.str();
                std::printf("wrote %zu vertices\n", g.vertices.size());
            }
        });

        auto* contract = gowers->add_subcommand("contract", "smallest k with contracting w_k");
        contract->add_option("--m", gm)->required();
        contract->add_option("--k-max", gkmax);
        add_output_opts(contract, gout);
        contract->callback([&] {
            GowersGraph g = build_graph(gm);
            ContractionResult r = contraction_check(g, gkmax);
            std::vector<ExperimentRecord> recs;
            for (const char* q : {"k_star", "c_star", "eta"}) {
                ParamMap p{{"m", std::to_string(gm)}, {"k_max", std::to_string(gkmax)}, {"quantity", q}};
                recs.push_back(make_record("gowers_contract", p, run_experiment("gowers_contract", p)));
            }
            if (r.k_star)
                std::printf("k* = %u, c* = %s, eta = %s\n", *r.k_star, r.c_star.to_string().c_str(),
                            recs[2].value.c_str());
            else
                std::printf("no contraction up to k_max = %u (c at k_max: %s)\n", gkmax,
                            r.c_star.to_string().c_str());
            emit(recs, gout);
        });
    }

    // --- pshapiro ---
    auto* ps = app.add_subcommand("pshapiro", "Thue-Morse along floor(n^c)");
    static std::string pc = "1.5";
    static std::uint64_t pN = 10000;
    static OutputOpts pout;
    ps->add_option("--c", pc, "rational exponent in (1,2), e.g. 1.5")->required();
    ps->add_option("--N", pN)->required();
    add_output_opts(ps, pout);
    ps->callback([&] {
        PSExperiment e = ps_frequency(Rational::parse(pc), pN);
        std::printf("freq0 = %s (~%.6f), deviation = %s (~%.3g), excluded = %llu\n",
                    e.freq0.to_string().c_str(), e.freq0.to_double(), e.deviation.to_string().c_str(),
                    e.deviation.to_double(), static_cast<unsigned long long>(e.excluded));
        ParamMap p{{"c", pc}, {"N", std::to_string(pN)}};
        std::vector<ExperimentRecord> recs{
            make_record("pshapiro", p, RunOutput{e.deviation.to_string(), true})};
        emit(recs, pout);
    });

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "cartesian parameter sweep from a config file");
    static std::string sw_config;
    static std::string sw_out, sw_format;
    static unsigned sw_threads = 0;
    sweep->add_option("--config", sw_config, "key=value config file")->required();
    sweep->add_option("--out", sw_out, "override the config output path");
    sweep->add_option("--format", sw_format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", sw_threads);
    sweep->callback([&] {
        std::ifstream f(sw_config);
        if (!f) throw std::runtime_error("cannot open config: " + sw_config);
        std::stringstream ss;
        ss << f.rdbuf();
        SweepConfig cfg = parse_sweep_config(ss.str());
        if (!sw_out.empty()) cfg.out_path = sw_out;
        if (!sw_format.empty()) cfg.format = sw_format;
        if (sw_threads) cfg.threads = sw_threads;
        std::printf("sweep %s: seed = %llu\n", cfg.experiment.c_str(),
                    static_cast<unsigned long long>(cfg.seed));
        auto recs = run_sweep(cfg);
        std::string text = cfg.format == "json" ? records_to_json(recs) : records_to_csv(recs);
        if (cfg.out_path.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
            out << text;
            std::printf("wrote %zu records to %s\n", recs.size(), cfg.out_path.c_str());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
