#include "opnorm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace opnorm::io {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string digest_bytes(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string(buf);
}

std::string digest_files(const std::vector<std::string>& paths) {
    std::string combined;
    for (const auto& p : paths) combined += digest_bytes(read_file(p));
    return digest_bytes(combined);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << bytes;
}

namespace {

json parse_json_file(const std::string& path) {
    return json::parse(read_file(path));
}

std::pair<int, std::vector<double>> parse_matrix_payload(const std::string& path) {
    const json j = parse_json_file(path);
    if (!j.contains("n") || !j.contains("data"))
        throw std::runtime_error(path + ": matrix file needs fields \"n\" and \"data\"");
    const int n = j.at("n").get<int>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (n < 1 || data.size() != static_cast<std::size_t>(n) * n)
        throw std::runtime_error(path + ": data length does not equal n*n");
    return {n, data};
}

} // namespace

Matrix load_matrix(const std::string& path) {
    const auto [n, data] = parse_matrix_payload(path);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = data[static_cast<std::size_t>(i) * n + j];
    return m;
}

SymMatrix load_sym_matrix(const std::string& path) {
    try {
        return SymMatrix::from(load_matrix(path), 1e-8);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Vec load_vector(const std::string& path) {
    const json j = parse_json_file(path);
    if (!j.contains("n") || !j.contains("data"))
        throw std::runtime_error(path + ": vector file needs fields \"n\" and \"data\"");
    const int n = j.at("n").get<int>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (n < 1 || data.size() != static_cast<std::size_t>(n))
        throw std::runtime_error(path + ": data length does not equal n");
    return data;
}

json matrix_json(const Matrix& m, const std::string& name) {
    json j;
    j["n"] = m.rows();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) data.push_back(m(i, k));
    j["data"] = data;
    if (!name.empty()) j["name"] = name;
    return j;
}

json report_json(const ineq::InequalityReport& rep) {
    json j;
    j["name"] = rep.name;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    if (std::isfinite(rep.ratio))
        j["ratio"] = rep.ratio;
    else
        j["ratio"] = nullptr;
    j["slack"] = rep.slack;
    j["trivial"] = rep.trivial;
    j["hypotheses_unmet"] = rep.hypotheses_unmet;
    j["witness"] = rep.witness;
    return j;
}

json report_json(const ineq::OrderReport& rep) {
    json j;
    j["name"] = "loewner-heinz";
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["holds"] = rep.holds;
    j["min_eigenvalue_diff"] = rep.min_eigenvalue_diff;
    return j;
}

json report_json(const refine::SpectralGap& gap) {
    json j;
    j["mode"] = gap.mode == refine::SignMode::McIntosh ? "mcintosh" : "cordes";
    j["term1"] = gap.term1;
    j["term2"] = gap.term2;
    j["d"] = gap.d;
    j["witness1"] = gap.witness1;
    j["witness2"] = gap.witness2;
    return j;
}

json report_json(const refine::CertifiedBound& bound) {
    json j;
    j["n"] = bound.n;
    j["r"] = bound.r;
    j["d"] = bound.d;
    j["delta"] = bound.delta;
    j["ell"] = bound.ell;
    j["side"] = bound.side == refine::StripSide::Left ? "left" : "right";
    j["x_abscissa"] = bound.x_abscissa;
    j["window"] = bound.window;
    j["poisson_gain"] = bound.poisson_gain;
    j["c_cert"] = bound.c_cert;
    j["clamped"] = bound.clamped;
    j["plateau"] = bound.plateau;
    return j;
}

json report_json(const refine::RefinedReport& rep) {
    json j;
    j["plain"] = report_json(rep.plain);
    j["d_available"] = rep.d_available;
    if (!rep.note.empty()) j["note"] = rep.note;
    if (rep.d_available) j["gap"] = report_json(rep.gap);
    j["certificate"] = rep.certificate;
    if (rep.certificate) {
        j["bound"] = report_json(rep.bound);
        j["sound"] = rep.sound;
        j["margin"] = rep.margin;
    }
    return j;
}

json report_json(const equality::EqualityVerdict& verdict) {
    json j;
    j["consistent"] = verdict.consistent;
    j["achieved"] = verdict.achieved;
    j["asserted"] = verdict.asserted;
    json clusters = json::array();
    for (const auto& c : verdict.clusters) {
        json cj;
        cj["mu"] = c.mu;
        cj["proj_norm"] = c.proj_norm;
        cj["tested"] = c.tested;
        cj["is_eigvec"] = c.is_eigvec;
        cj["achieved_eigenvalue"] = c.achieved_eigenvalue;
        cj["residual"] = c.residual;
        clusters.push_back(cj);
    }
    j["clusters"] = clusters;
    json common = json::array();
    for (const auto& c : verdict.common_eigenvalues) {
        json cj;
        cj["lambda"] = c.lambda;
        cj["mu"] = c.mu;
        cj["gap"] = c.gap;
        common.push_back(cj);
    }
    j["common_eigenvalues"] = common;
    return j;
}

json report_json(const approx::SearchReport& rep, bool include_history) {
    json j;
    j["best_value"] = rep.best_value;
    j["feasible"] = rep.feasible;
    j["evaluations"] = rep.evaluations;
    j["certificate_cap"] = rep.certificate_cap;
    j["consistent_with_certificate"] = rep.consistent_with_certificate;
    json best;
    best["a"] = rep.best.a;
    best["b"] = rep.best.b;
    std::vector<double> c;
    for (int i = 0; i < rep.best.C.rows(); ++i)
        for (int k = 0; k < rep.best.C.cols(); ++k) c.push_back(rep.best.C(i, k));
    best["C"] = c;
    best["r"] = rep.best.r;
    j["best_instance"] = best;
    if (include_history) {
        json h = json::array();
        for (const auto& row : rep.history)
            h.push_back({{"restart", row.restart}, {"iteration", row.iteration}, {"best_value", row.best_value}});
        j["history"] = h;
    }
    return j;
}

json config_json(const fuzz::FuzzConfig& cfg) {
    json j;
    j["mode"] = cfg.mode == refine::SignMode::McIntosh ? "mcintosh" : "cordes";
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["n_min"] = cfg.n_min;
    j["n_max"] = cfg.n_max;
    j["spectrum_min"] = cfg.spectrum_min;
    j["spectrum_max"] = cfg.spectrum_max;
    j["r_grid"] = cfg.r_grid;
    j["jobs"] = cfg.jobs;
    j["equality_every"] = cfg.equality_every;
    return j;
}

fuzz::FuzzConfig parse_fuzz_config(const json& j) {
    fuzz::FuzzConfig cfg;
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "mcintosh")
            cfg.mode = refine::SignMode::McIntosh;
        else if (mode == "cordes")
            cfg.mode = refine::SignMode::Cordes;
        else
            throw std::runtime_error("config: mode must be \"mcintosh\" or \"cordes\"");
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_min")) cfg.n_min = j.at("n_min").get<int>();
    if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
    if (j.contains("spectrum_min")) cfg.spectrum_min = j.at("spectrum_min").get<double>();
    if (j.contains("spectrum_max")) cfg.spectrum_max = j.at("spectrum_max").get<double>();
    if (j.contains("r_grid")) cfg.r_grid = j.at("r_grid").get<std::vector<double>>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (j.contains("equality_every")) cfg.equality_every = j.at("equality_every").get<int>();
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw std::runtime_error("config: need 1 <= n_min <= n_max");
    if (cfg.r_grid.empty()) throw std::runtime_error("config: r_grid must be nonempty");
    return cfg;
}

json campaign_summary_json(const fuzz::CampaignReport& rep) {
    json j;
    j["config"] = config_json(rep.config);
    j["trials"] = static_cast<long>(rep.rows.size());
    j["violations"] = rep.violations;
    j["equality_trials"] = rep.equality_trials;
    j["equality_inconsistent"] = rep.equality_inconsistent;
    j["min_slack_with_d"] = rep.min_slack_with_d;
    j["max_c_cert"] = rep.max_c_cert;
    return j;
}

std::string campaign_csv(const fuzz::CampaignReport& rep) {
    std::string out = "trial,n,r,d,ratio,c_cert,verdict\n";
    for (const auto& row : rep.rows) {
        out += std::to_string(row.trial);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += format_double(row.r);
        out += ',';
        out += format_double(row.d);
        out += ',';
        out += format_double(row.ratio);
        out += ',';
        out += format_double(row.c_cert);
        out += ',';
        out += row.verdict;
        out += '\n';
    }
    return out;
}

std::string history_csv(const std::vector<approx::HistoryRow>& history) {
    std::string out = "restart,iteration,best_value\n";
    for (const auto& row : history) {
        out += std::to_string(row.restart);
        out += ',';
        out += std::to_string(row.iteration);
        out += ',';
        out += format_double(row.best_value);
        out += '\n';
    }
    return out;
}

std::string grid_csv(const strip::StripGrid& grid) {
    std::string out = "re_z,im_z,re_F,im_F,abs_F\n";
    for (std::size_t i = 0; i < grid.xs.size(); ++i)
        for (std::size_t j = 0; j < grid.ts.size(); ++j) {
            const auto v = grid.at(static_cast<int>(i), static_cast<int>(j));
            out += format_double(grid.xs[i]);
            out += ',';
            out += format_double(grid.ts[j]);
            out += ',';
            out += format_double(v.real());
            out += ',';
            out += format_double(v.imag());
            out += ',';
            out += format_double(std::abs(v));
            out += '\n';
        }
    return out;
}

json run_report(const std::string& subcommand, const json& params,
                const std::string& inputs_digest, std::uint64_t seed, json results) {
    json j;
    j["tool"] = "opnorm";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["inputs_digest"] = inputs_digest;
    j["params"] = params;
    j["results"] = std::move(results);
    return j;
}

} // namespace opnorm::io
