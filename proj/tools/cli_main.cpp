// sqrtn: experiment driver for circle statistics of sqrt(n) and the
// associated random-lattice limit model. Every subcommand writes CSV data
// files (first comment line: JSON of the deterministic run parameters)
// plus a manifest.json sidecar with wall time and output checksums.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqrtn/csv.hpp"
#include "sqrtn/lattice.hpp"
#include "sqrtn/numth.hpp"
#include "sqrtn/rng.hpp"
#include "sqrtn/seq.hpp"
#include "sqrtn/stats.hpp"

namespace {

namespace fs = std::filesystem;
using sqrtn::format_g17;

struct Outputs {
    fs::path dir;
    sqrtn::RunManifest manifest;
    std::vector<std::pair<std::string, fs::path>> files;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    std::ofstream open_csv(const std::string& name, const std::string& plain_header = "") {
        fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        files.emplace_back(name, p);
        if (!plain_header.empty()) out << plain_header << "\n";
        out << "# " << manifest.to_json() << "\n";
        return out;
    }

    void finish() {
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::vector<std::pair<std::string, std::uint64_t>> sums;
        for (const auto& [name, p] : files) sums.emplace_back(name, sqrtn::fnv1a64_file(p.string()));
        sqrtn::write_manifest_json((dir / "manifest.json").string(), manifest, wall, sums);
    }
};

Outputs make_outputs(const std::string& out_flag, const std::string& command) {
    std::string dir = out_flag;
    if (dir.empty()) {
        const char* env = std::getenv("SQRTN_OUT_DIR");
        if (env) dir = env;
    }
    if (dir.empty())
        throw std::invalid_argument("no output directory: pass --out or set SQRTN_OUT_DIR");
    Outputs o;
    o.dir = fs::path(dir);
    fs::create_directories(o.dir);
    o.manifest.command = command;
    return o;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        std::string tok = s.substr(pos, next - pos);
        if (!tok.empty()) {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad number: " + tok);
            out.push_back(v);
        }
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

sqrtn::Interval parse_interval(const std::string& s) {
    auto v = parse_number_list(s);
    if (v.size() != 2) throw std::invalid_argument("interval needs exactly lo,hi: " + s);
    return sqrtn::Interval::half_open(v[0], v[1]);
}

sqrtn::FracSequence generate_for(std::uint64_t t, double c, double alpha, int threads) {
    if (alpha != 0.5) {
        if (c != 0.0)
            throw std::invalid_argument("--c applies to the sqrt sequence only (alpha = 0.5)");
        return sqrtn::generate_alpha_power(t, alpha, threads);
    }
    return sqrtn::generate(t, c, threads);
}

void add_param_u64(sqrtn::RunManifest& m, const std::string& k, std::uint64_t v) {
    m.add_param(k, std::to_string(v));
}
void add_param_num(sqrtn::RunManifest& m, const std::string& k, double v) {
    m.add_param(k, format_g17(v));
}

void write_hist(std::ofstream& out, const std::vector<sqrtn::HistBin>& hist) {
    out << "left,right,density\n";
    for (const auto& b : hist)
        out << format_g17(b.left) << "," << format_g17(b.right) << "," << format_g17(b.density)
            << "\n";
}

// ------------------------------------------------------- subcommands

int run_gen(std::uint64_t t, double c, double alpha, const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "gen");
    add_param_u64(o.manifest, "t", t);
    add_param_num(o.manifest, "c", c);
    add_param_num(o.manifest, "alpha", alpha);
    o.manifest.threads = threads;
    auto seq = generate_for(t, c, alpha, threads);
    char head[96];
    std::snprintf(head, sizeof head, "# T=%llu c=%s N=%llu",
                  static_cast<unsigned long long>(t), format_g17(c).c_str(),
                  static_cast<unsigned long long>(seq.N()));
    auto out = o.open_csv("sequence.csv", head);
    for (double v : seq.values) out << format_g17(v) << "\n";
    out.close();
    o.finish();
    return 0;
}

int run_gaps(std::uint64_t t, double c, double alpha, int bins, double lo, double hi,
             const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "gaps");
    add_param_u64(o.manifest, "t", t);
    add_param_num(o.manifest, "c", c);
    add_param_num(o.manifest, "alpha", alpha);
    o.manifest.add_param("bins", std::to_string(bins));
    add_param_num(o.manifest, "lo", lo);
    add_param_num(o.manifest, "hi", hi);
    o.manifest.threads = threads;
    auto seq = generate_for(t, c, alpha, threads);
    auto gaps = sqrtn::scaled_gaps(seq);
    auto hist = sqrtn::histogram(gaps, bins, lo, hi);
    auto out = o.open_csv("gaps_hist.csv");
    write_hist(out, hist);
    out.close();
    std::printf("ks_exp1=%s\n", format_g17(sqrtn::ks_distance_exp1(gaps)).c_str());
    o.finish();
    return 0;
}

int run_paircorr(std::uint64_t t, double c, double alpha, int bins, double lo, double hi,
                 const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "paircorr");
    add_param_u64(o.manifest, "t", t);
    add_param_num(o.manifest, "c", c);
    add_param_num(o.manifest, "alpha", alpha);
    o.manifest.add_param("bins", std::to_string(bins));
    add_param_num(o.manifest, "lo", lo);
    add_param_num(o.manifest, "hi", hi);
    o.manifest.threads = threads;
    auto seq = generate_for(t, c, alpha, threads);
    auto hist = sqrtn::pair_correlation_histogram(seq, bins, lo, hi, threads);
    auto out = o.open_csv("paircorr_hist.csv");
    write_hist(out, hist);
    out.close();
    o.finish();
    return 0;
}

int run_countdist(std::uint64_t t, double c, double alpha, const std::string& window,
                  const std::string& sampler_kind, std::uint64_t S, std::uint64_t seed,
                  const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "countdist");
    add_param_u64(o.manifest, "t", t);
    add_param_num(o.manifest, "c", c);
    add_param_num(o.manifest, "alpha", alpha);
    o.manifest.add_param("window", window);
    o.manifest.add_param("sampler", sampler_kind);
    add_param_u64(o.manifest, "samples", S);
    o.manifest.seed = seed;
    o.manifest.threads = threads;
    auto seq = generate_for(t, c, alpha, threads);
    sqrtn::Box box{parse_interval(window)};
    sqrtn::AlphaSampler sampler =
        sampler_kind == "random" ? sqrtn::AlphaSampler::seeded_uniform_random(S, seed)
                                 : sqrtn::AlphaSampler::uniform_grid(S);
    auto dist = sqrtn::empirical_count_distribution(seq, box, sampler, threads);
    auto out = o.open_csv("countdist.csv");
    out << "k,weight,prob\n";
    for (const auto& [k, w] : dist.weight)
        out << k[0] << "," << format_g17(w) << "," << format_g17(w / dist.samples) << "\n";
    out.close();
    o.finish();
    return 0;
}

int run_moments(std::uint64_t t, double c, double alpha, const std::vector<std::string>& windows,
                const std::string& s_list, std::uint64_t S, int kmax, std::uint64_t seed,
                const std::string& sampler_kind, const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "moments");
    add_param_u64(o.manifest, "t", t);
    add_param_num(o.manifest, "c", c);
    add_param_num(o.manifest, "alpha", alpha);
    for (const auto& w : windows) o.manifest.add_param("window", w);
    o.manifest.add_param("s", s_list);
    add_param_u64(o.manifest, "samples", S);
    o.manifest.add_param("kmax", std::to_string(kmax));
    o.manifest.add_param("sampler", sampler_kind);
    o.manifest.seed = seed;
    o.manifest.threads = threads;
    auto seq = generate_for(t, c, alpha, threads);
    sqrtn::Box box;
    for (const auto& w : windows) box.push_back(parse_interval(w));
    std::vector<double> svec = parse_number_list(s_list);
    if (svec.size() != box.size())
        throw std::invalid_argument("--s must list one exponent per --window");
    std::uint64_t eff_S = S == 0 ? seq.N() : S;
    sqrtn::AlphaSampler sampler =
        sampler_kind == "random" ? sqrtn::AlphaSampler::seeded_uniform_random(eff_S, seed)
                                 : sqrtn::AlphaSampler::uniform_grid(eff_S);
    double value = kmax < 0 ? sqrtn::mixed_moment(seq, box, svec, sampler, threads)
                            : sqrtn::restricted_moment(seq, box, svec, kmax, sampler, threads);
    auto out = o.open_csv("moments.csv");
    out << "value\n" << format_g17(value) << "\n";
    out.close();
    std::printf("moment=%s\n", format_g17(value).c_str());
    o.finish();
    return 0;
}

int run_lattice_sim(const std::string& box_json, std::uint64_t samples, std::uint64_t seed,
                    const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "lattice-sim");
    o.manifest.add_param("box", box_json);
    add_param_u64(o.manifest, "samples", samples);
    o.manifest.seed = seed;
    o.manifest.threads = threads;
    auto parsed = nlohmann::json::parse(box_json);
    if (!parsed.is_array() || parsed.empty())
        throw std::invalid_argument("--box must be a JSON array of [lo,hi] pairs");
    sqrtn::Box box;
    for (const auto& e : parsed) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("--box entries must be [lo,hi] pairs");
        box.push_back(sqrtn::Interval::half_open(e[0].get<double>(), e[1].get<double>()));
    }
    auto dist = sqrtn::limit_process_distribution(box, samples, seed, threads);
    auto out = o.open_csv("lattice_sim.csv");
    for (std::size_t j = 0; j < box.size(); ++j) out << "k" << j + 1 << ",";
    out << "weight,prob\n";
    for (const auto& [k, w] : dist.weight) {
        for (int kj : k) out << kj << ",";
        out << format_g17(w) << "," << format_g17(w / dist.samples) << "\n";
    }
    out.close();
    o.finish();
    return 0;
}

int run_siegel_check(const std::string& i1, const std::string& i2, std::uint64_t samples,
                     std::uint64_t seed, const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "siegel-check");
    o.manifest.add_param("i1", i1);
    o.manifest.add_param("i2", i2);
    add_param_u64(o.manifest, "samples", samples);
    o.manifest.seed = seed;
    o.manifest.threads = threads;
    sqrtn::Interval I1 = parse_interval(i1), I2 = parse_interval(i2);
    auto est = sqrtn::siegel_moment_check(I1, I2, samples, seed, threads);
    double len1 = I1.length();
    double target_second = len1 + len1 * len1;
    double olap = std::max(0.0, std::min(I1.hi, I2.hi) - std::max(I1.lo, I2.lo));
    double target_cross = olap + len1 * I2.length();
    double z_second = std::fabs(est.second_moment - target_second) / est.se_second;
    double z_cross = std::fabs(est.cross_moment - target_cross) / est.se_cross;
    auto out = o.open_csv("siegel_check.csv");
    out << "quantity,estimate,target,se,z\n";
    out << "second_moment," << format_g17(est.second_moment) << "," << format_g17(target_second)
        << "," << format_g17(est.se_second) << "," << format_g17(z_second) << "\n";
    out << "cross_moment," << format_g17(est.cross_moment) << "," << format_g17(target_cross)
        << "," << format_g17(est.se_cross) << "," << format_g17(z_cross) << "\n";
    out.close();
    o.finish();
    bool ok = z_second <= 3.0 && z_cross <= 3.0;
    std::printf("second_moment=%s (target %s, z=%.2f)\ncross_moment=%s (target %s, z=%.2f)\n%s\n",
                format_g17(est.second_moment).c_str(), format_g17(target_second).c_str(),
                z_second, format_g17(est.cross_moment).c_str(), format_g17(target_cross).c_str(),
                z_cross, ok ? "OK" : "MISMATCH");
    return ok ? 0 : 3;
}

int run_escape_mass(double v, double beta, double eta, double theta, const std::string& r_sweep,
                    const std::string& out_flag) {
    Outputs o = make_outputs(out_flag, "escape-mass");
    add_param_num(o.manifest, "v", v);
    add_param_num(o.manifest, "beta", beta);
    add_param_num(o.manifest, "eta", eta);
    add_param_num(o.manifest, "theta", theta);
    o.manifest.add_param("r_sweep", r_sweep);
    auto rs = parse_number_list(r_sweep);
    auto out = o.open_csv("escape_mass.csv");
    out << "R,v,beta,integral\n";
    std::vector<double> vals;
    for (double R : rs) {
        double integ = sqrtn::escape_mass_integral_bar(v, R, beta, eta, theta);
        vals.push_back(integ);
        out << format_g17(R) << "," << format_g17(v) << "," << format_g17(beta) << ","
            << format_g17(integ) << "\n";
    }
    out.close();
    if (rs.size() >= 2 && vals.front() > 0.0 && vals.back() > 0.0) {
        double slope = std::log(vals.back() / vals.front()) / std::log(rs.back() / rs.front());
        std::printf("fitted_exponent=%s\n", format_g17(slope).c_str());
    }
    o.finish();
    return 0;
}

int run_gauss_check(std::uint64_t c_max, std::uint64_t n_max, std::uint64_t random_pairs,
                    std::uint64_t seed, const std::string& out_flag) {
    Outputs o = make_outputs(out_flag, "gauss-check");
    add_param_u64(o.manifest, "c_max", c_max);
    add_param_u64(o.manifest, "n_max", n_max);
    add_param_u64(o.manifest, "random_pairs", random_pairs);
    o.manifest.seed = seed;
    auto out = o.open_csv("gauss_check.csv");
    out << "n,c,abs_error\n";
    double worst = 0.0;
    std::uint64_t checked = 0;
    auto check_one = [&](std::int64_t n, std::uint64_t c) {
        auto direct = sqrtn::gauss_sum_direct(n, c);
        auto closed = sqrtn::gauss_sum_closed_ext(n, c);
        double err = std::abs(direct - closed);
        worst = std::max(worst, err);
        ++checked;
        out << n << "," << c << "," << format_g17(err) << "\n";
    };
    for (std::uint64_t c = 1; c <= c_max; ++c)
        for (std::uint64_t n = 1; n <= n_max; n += 2) {
            if (std::gcd(n, 4 * c) != 1) continue;
            check_one(static_cast<std::int64_t>(n), c);
            check_one(-static_cast<std::int64_t>(n), c);
        }
    sqrtn::Xoshiro256pp rng(seed);
    for (std::uint64_t i = 0; i < random_pairs; ++i) {
        std::uint64_t c = 1 + rng.next() % 10000;
        std::int64_t n = 0;
        do {
            n = 1 + 2 * static_cast<std::int64_t>(rng.next() % 5000);
        } while (std::gcd(static_cast<std::uint64_t>(n), 4 * c) != 1);
        if (rng.next() & 1) n = -n;
        check_one(n, c);
    }
    out.close();
    o.finish();
    bool ok = worst <= 1e-9;
    std::printf("checked=%llu max_abs_error=%s %s\n", static_cast<unsigned long long>(checked),
                format_g17(worst).c_str(), ok ? "OK" : "MISMATCH");
    return ok ? 0 : 3;
}

int run_lemma_check(const std::string& d_grid, const std::string& t_grid, double eps, double eps1,
                    double eps2, const std::string& out_flag) {
    Outputs o = make_outputs(out_flag, "lemma-check");
    o.manifest.add_param("d_grid", d_grid);
    o.manifest.add_param("t_grid", t_grid);
    add_param_num(o.manifest, "eps", eps);
    add_param_num(o.manifest, "eps1", eps1);
    add_param_num(o.manifest, "eps2", eps2);
    auto Ds = parse_number_list(d_grid);
    auto Ts = parse_number_list(t_grid);
    auto rows = sqrtn::lemma_bound_report(Ds, Ts, sqrtn::TestFunction::triangle(), eps, eps1, eps2);
    auto out = o.open_csv("lemma_check.csv");
    out << "D,T,S,bound_poly,bound_split,ratio_poly,ratio_split,ratio_eps\n";
    for (const auto& r : rows)
        out << format_g17(r.D) << "," << format_g17(r.T) << "," << format_g17(r.S) << ","
            << format_g17(r.bound_poly) << "," << format_g17(r.bound_split) << ","
            << format_g17(r.ratio_poly) << "," << format_g17(r.ratio_split) << ","
            << format_g17(r.ratio_eps) << "\n";
    out.close();
    o.finish();
    // envelope check: the normalized ratio over the top-right quarter of the
    // grid (upper half of each axis by index) must not exceed the maximum
    // seen over the rest
    double d_split = Ds[Ds.size() / 2];
    double t_split = Ts[Ts.size() / 2];
    double max_tr = 0.0, max_rest = 0.0;
    for (const auto& r : rows) {
        if (r.D >= d_split && r.T >= t_split)
            max_tr = std::max(max_tr, r.ratio_eps);
        else
            max_rest = std::max(max_rest, r.ratio_eps);
    }
    bool ok = max_tr <= max_rest;
    std::printf("ratio_eps top-right max=%s rest max=%s %s\n", format_g17(max_tr).c_str(),
                format_g17(max_rest).c_str(), ok ? "OK" : "MISMATCH");
    return ok ? 0 : 3;
}

int run_figures(std::uint64_t t, std::uint64_t t_pc, int bins, double lo, double hi,
                const std::string& out_flag, int threads) {
    Outputs o = make_outputs(out_flag, "figures");
    add_param_u64(o.manifest, "t", t);
    add_param_u64(o.manifest, "t_paircorr", t_pc);
    o.manifest.add_param("bins", std::to_string(bins));
    add_param_num(o.manifest, "lo", lo);
    add_param_num(o.manifest, "hi", hi);
    o.manifest.threads = threads;

    auto seq_sqrt = sqrtn::generate(t, 0.0, threads);
    auto g1 = sqrtn::scaled_gaps(seq_sqrt);
    auto out1 = o.open_csv("fig1_gaps_sqrt.csv");
    write_hist(out1, sqrtn::histogram(g1, bins, lo, hi));
    out1.close();

    auto seq_cbrt = sqrtn::generate_alpha_power(t, 1.0 / 3.0, threads);
    auto g2 = sqrtn::scaled_gaps(seq_cbrt);
    auto out2 = o.open_csv("fig2_gaps_cbrt.csv");
    write_hist(out2, sqrtn::histogram(g2, bins, lo, hi));
    out2.close();

    auto seq_pc = sqrtn::generate(t_pc, 0.0, threads);
    auto out3 = o.open_csv("fig3_paircorr.csv");
    write_hist(out3, sqrtn::pair_correlation_histogram(seq_pc, bins, lo, hi, threads));
    out3.close();

    o.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local statistics of sqrt(n) mod 1 and the random-lattice limit model"};
    app.require_subcommand(0, 1);

    // shared flag storage
    std::uint64_t t = 2000, t_pc = 2000, S = 10000, samples = 100000, seed = 1;
    std::uint64_t c_max = 50, n_max = 99, random_pairs = 1000;
    double c = 0.0, alpha = 0.5, lo = 0.0, hi = 3.0, v = 1e-4, beta = 0.5, eta = 0.5,
           theta = 0.5, eps = 0.1, eps1 = 0.1, eps2 = 0.1;
    int bins = 60, threads = 1, kmax = -1;
    std::string out_flag, window = "0,1", sampler_kind = "grid", box_json = "[[0,1]]";
    std::string i1 = "0,1", i2 = "0.5,1.5", r_sweep = "4,16,64", s_list = "2";
    std::string d_grid = "2,4,8,16,32,64,128,256";
    std::string t_grid = "2,4,8,16,32,64,128,256,512,1024";
    std::vector<std::string> windows{"0,1"};

    auto add_seq_flags = [&](CLI::App* s) {
        s->add_option("--t", t, "sequence cutoff T");
        s->add_option("--c", c, "keep only n in (c^2 T, T], 0 <= c < 1");
        s->add_option("--alpha", alpha, "exponent of n^alpha mod 1 (default sqrt)");
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", out_flag, "output directory (default $SQRTN_OUT_DIR)");
        s->add_option("--threads", threads, "worker threads (default 1, reproducible)");
    };
    auto add_hist_flags = [&](CLI::App* s) {
        s->add_option("--bins", bins, "histogram bin count");
        s->add_option("--lo", lo, "histogram lower edge");
        s->add_option("--hi", hi, "histogram upper edge");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate the fractional-part sequence");
    add_seq_flags(gen);
    add_common(gen);

    CLI::App* gaps = app.add_subcommand("gaps", "scaled-gap histogram");
    add_seq_flags(gaps);
    add_hist_flags(gaps);
    add_common(gaps);

    CLI::App* pc = app.add_subcommand("paircorr", "two-point correlation histogram");
    add_seq_flags(pc);
    add_hist_flags(pc);
    add_common(pc);

    CLI::App* cd = app.add_subcommand("countdist", "window count distribution");
    add_seq_flags(cd);
    cd->add_option("--window", window, "window interval lo,hi");
    cd->add_option("--sampler", sampler_kind, "alpha sampler: grid or random")
        ->check(CLI::IsMember({"grid", "random"}));
    cd->add_option("--samples", S, "number of alpha samples");
    cd->add_option("--seed", seed, "random sampler seed");
    add_common(cd);

    CLI::App* mo = app.add_subcommand("moments", "mixed moments of window counts");
    add_seq_flags(mo);
    mo->add_option("--window", windows, "window interval lo,hi (repeatable)");
    mo->add_option("--s", s_list, "comma list of exponents, one per window");
    mo->add_option("--samples", S, "alpha samples (0: match sequence size)");
    mo->add_option("--kmax", kmax, "restrict to counts <= kmax (-1: no restriction)");
    mo->add_option("--sampler", sampler_kind, "alpha sampler: grid or random")
        ->check(CLI::IsMember({"grid", "random"}));
    mo->add_option("--seed", seed, "random sampler seed");
    add_common(mo);

    CLI::App* ls = app.add_subcommand("lattice-sim", "limit-process count distribution");
    ls->add_option("--box", box_json, "JSON array of [lo,hi] interval pairs");
    ls->add_option("--samples", samples, "Monte Carlo sample count");
    ls->add_option("--seed", seed, "master seed");
    add_common(ls);

    CLI::App* sc = app.add_subcommand("siegel-check", "moment identities of the limit process");
    sc->add_option("--i1", i1, "first interval lo,hi");
    sc->add_option("--i2", i2, "second interval lo,hi");
    sc->add_option("--samples", samples, "Monte Carlo sample count");
    sc->add_option("--seed", seed, "master seed");
    add_common(sc);

    CLI::App* em = app.add_subcommand("escape-mass", "cusp mass integrals along the horocycle");
    em->add_option("--v", v, "horocycle height");
    em->add_option("--beta", beta, "cusp exponent");
    em->add_option("--eta", eta, "spike exclusion exponent (used for beta >= 1)");
    em->add_option("--theta", theta, "spike exclusion prefactor");
    em->add_option("--r-sweep", r_sweep, "comma list of cutoffs R");
    em->add_option("--out", out_flag, "output directory (default $SQRTN_OUT_DIR)");

    CLI::App* gc = app.add_subcommand("gauss-check", "direct vs closed-form Gauss sums");
    gc->add_option("--c-max", c_max, "exhaustive check for c <= c-max");
    gc->add_option("--n-max", n_max, "exhaustive check for odd n <= n-max");
    gc->add_option("--random", random_pairs, "additional random (n,c) pairs with c <= 1e4");
    gc->add_option("--seed", seed, "random pair seed");
    gc->add_option("--out", out_flag, "output directory (default $SQRTN_OUT_DIR)");

    CLI::App* lc = app.add_subcommand("lemma-check", "divisor-sum bound report");
    lc->add_option("--d-grid", d_grid, "comma list of D values");
    lc->add_option("--t-grid", t_grid, "comma list of T values");
    lc->add_option("--eps", eps, "exponent in the normalized ratio S T^(1-eps)/D^2");
    lc->add_option("--eps1", eps1, "exponent in D^(2+eps1)/T");
    lc->add_option("--eps2", eps2, "exponent in D^2/T + D^(3/2) T^(eps2)");
    lc->add_option("--out", out_flag, "output directory (default $SQRTN_OUT_DIR)");

    CLI::App* fig = app.add_subcommand("figures", "regenerate the standard figure datasets");
    fig->add_option("--t", t, "cutoff for the gap histograms");
    fig->add_option("--t-paircorr", t_pc, "cutoff for the pair correlation histogram");
    add_hist_flags(fig);
    add_common(fig);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return run_gen(t, c, alpha, out_flag, threads);
        if (gaps->parsed()) return run_gaps(t, c, alpha, bins, lo, hi, out_flag, threads);
        if (pc->parsed()) return run_paircorr(t, c, alpha, bins, lo, hi, out_flag, threads);
        if (cd->parsed())
            return run_countdist(t, c, alpha, window, sampler_kind, S, seed, out_flag, threads);
        if (mo->parsed())
            return run_moments(t, c, alpha, windows, s_list, S, kmax, seed, sampler_kind,
                               out_flag, threads);
        if (ls->parsed()) return run_lattice_sim(box_json, samples, seed, out_flag, threads);
        if (sc->parsed()) return run_siegel_check(i1, i2, samples, seed, out_flag, threads);
        if (em->parsed()) return run_escape_mass(v, beta, eta, theta, r_sweep, out_flag);
        if (gc->parsed()) return run_gauss_check(c_max, n_max, random_pairs, seed, out_flag);
        if (lc->parsed()) return run_lemma_check(d_grid, t_grid, eps, eps1, eps2, out_flag);
        if (fig->parsed()) return run_figures(t, t_pc, bins, lo, hi, out_flag, threads);
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
}
