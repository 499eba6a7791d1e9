// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "darkcount/counting.hpp"
#include "darkcount/couplings.hpp"
#include "darkcount/darkspace.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/modp.hpp"
#include "darkcount/protocol.hpp"
#include "darkcount/sector.hpp"
#include "darkcount/trajectory.hpp"

namespace darkcount::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// %.12g rendering used for every decimal CSV column.
inline std::string decimal12(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return buf.data();
}

inline std::string rational_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// ---- coupling profiles ------------------------------------------------------

inline json profile_to_json(const CouplingProfile& p) {
    json arr = json::array();
    for (const cplx& g : p.values()) arr.push_back({g.real(), g.imag()});
    return arr;
}

/// Accepts a bare [[re, im], ...] array or an object with a "couplings" array.
inline CouplingProfile profile_from_json(const json& j, const std::string& label = "file") {
    const json& arr = j.is_object() && j.contains("couplings") ? j.at("couplings") : j;
    if (!arr.is_array() || arr.empty()) throw ArgumentError("io: profile must be a non-empty array of [re, im] pairs");
    std::vector<cplx> values;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ArgumentError("io: every coupling must be a [re, im] pair of numbers");
        values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return CouplingProfile(std::move(values), label);
}

inline CouplingProfile read_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("io: cannot open profile file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ArgumentError("io: malformed profile JSON in " + path + ": " + e.what());
    }
    return profile_from_json(j, "file:" + path);
}

// ---- rank and counting ------------------------------------------------------

inline json rank_record(int n_qubits, int n_excited, const std::string& method, std::uint64_t rank,
                        std::uint64_t nullity, const json& tolerance, std::uint64_t seed) {
    return json{{"N", n_qubits}, {"s", n_excited}, {"method", method}, {"rank", rank},
                {"nullity", nullity}, {"tolerance", tolerance}, {"seed", seed}};
}

inline json rank_record(const RankReport& r, int n_qubits, int n_excited, std::uint64_t seed) {
    return rank_record(n_qubits, n_excited, "numeric-svd", static_cast<std::uint64_t>(r.rank),
                       static_cast<std::uint64_t>(r.nullity), r.threshold, seed);
}

inline json rank_record(const modp::ExactRankResult& r) {
    json rec = rank_record(r.n_qubits, r.n_excited, "exact-modp", r.rank, r.nullity, nullptr, r.seed);
    rec["prime"] = r.prime;
    rec["certificate"] = modp::to_string(r.certificate);
    return rec;
}

// ---- sweep ------------------------------------------------------------------

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "N,s,alpha,order_param,n_dark,sector_size\n";
    for (const auto& r : records)
        os << r.n_qubits << ',' << r.n_excited << ',' << decimal12(to_double(r.alpha)) << ','
           << decimal12(to_double(r.order_param)) << ',' << r.n_dark << ',' << r.sector_size << '\n';
    return os.str();
}

inline std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream os;
    os << "alpha,order_param\n";
    for (const auto& p : curve) os << decimal12(p.alpha) << ',' << decimal12(p.order_param) << '\n';
    return os.str();
}

inline json sweep_json(const std::vector<SweepRecord>& records, const std::vector<CurvePoint>& curve) {
    json recs = json::array();
    for (const auto& r : records)
        recs.push_back({{"N", r.n_qubits},
                        {"s", r.n_excited},
                        {"alpha", rational_string(r.alpha)},
                        {"order_param", rational_string(r.order_param)},
                        {"order_param_decimal", decimal12(to_double(r.order_param))},
                        {"n_dark", r.n_dark.str()},
                        {"sector_size", r.sector_size.str()}});
    json pts = json::array();
    for (const auto& p : curve) pts.push_back({p.alpha, p.order_param});
    return json{{"records", recs}, {"curve", pts}};
}

/**
 * Order parameter against alpha = s/N: one marker series per N over the
 * thermodynamic curve. Plain SVG 1.1 with no external resources.
 */
inline std::string sweep_svg(const std::vector<SweepRecord>& records, const std::vector<CurvePoint>& curve) {
    constexpr double W = 640, H = 480, L = 70, R = 150, T = 30, B = 60;
    const double pw = W - L - R;
    const double ph = H - T - B;
    auto x = [&](double a) { return L + a * pw; };
    auto y = [&](double v) { return T + (1.0 - v) * ph; };
    auto num = [](double v) {
        std::array<char, 32> buf{};
        std::snprintf(buf.data(), buf.size(), "%.2f", v);
        return std::string(buf.data());
    };
    static const std::array<const char*, 8> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                      "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double t = i / 5.0;
        os << "<line x1=\"" << num(x(t)) << "\" y1=\"" << num(y(0)) << "\" x2=\"" << num(x(t)) << "\" y2=\""
           << num(y(0) + 5) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << num(x(t)) << "\" y=\"" << num(y(0) + 20) << "\" text-anchor=\"middle\">" << num(t)
           << "</text>\n"
           << "<line x1=\"" << num(x(0) - 5) << "\" y1=\"" << num(y(t)) << "\" x2=\"" << num(x(0)) << "\" y2=\""
           << num(y(t)) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << num(x(0) - 8) << "\" y=\"" << num(y(t) + 4) << "\" text-anchor=\"end\">" << num(t)
           << "</text>\n";
    }
    os << "<text x=\"" << num(L + pw / 2) << "\" y=\"" << num(H - 15) << "\" text-anchor=\"middle\">alpha = s/N</text>\n"
       << "<text x=\"18\" y=\"" << num(T + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << num(T + ph / 2) << ")\">N_dark / binomial(N, s)</text>\n";

    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i)
        os << (i ? " " : "") << num(x(curve[i].alpha)) << ',' << num(y(curve[i].order_param));
    os << "\"/>\n";

    std::vector<int> ns;
    for (const auto& r : records)
        if (ns.empty() || ns.back() != r.n_qubits) ns.push_back(r.n_qubits);
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const char* c = colors[k % colors.size()];
        os << "<g fill=\"" << c << "\" stroke=\"" << c << "\">\n";
        for (const auto& r : records)
            if (r.n_qubits == ns[k])
                os << "<circle cx=\"" << num(x(to_double(r.alpha))) << "\" cy=\"" << num(y(to_double(r.order_param)))
                   << "\" r=\"3.5\"/>\n";
        const double ly = T + 20 + 22 * static_cast<double>(k);
        os << "<circle cx=\"" << num(W - R + 20) << "\" cy=\"" << num(ly) << "\" r=\"3.5\"/>\n"
           << "<text x=\"" << num(W - R + 32) << "\" y=\"" << num(ly + 4) << "\" stroke=\"none\" fill=\"black\">N = "
           << ns[k] << "</text>\n</g>\n";
    }
    const double ly = T + 20 + 22 * static_cast<double>(ns.size());
    os << "<line x1=\"" << num(W - R + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(W - R + 28) << "\" y2=\""
       << num(ly) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
       << "<text x=\"" << num(W - R + 32) << "\" y=\"" << num(ly + 4) << "\">N to infinity</text>\n"
       << "</svg>\n";
    return os.str();
}

// ---- protocol ---------------------------------------------------------------

inline json protocol_json(const ProtocolResult& r) {
    json arr = json::array();
    for (const auto& a : r.per_arrangement)
        arr.push_back({{"excited", excited_labels(a.arrangement)}, {"null_probability", a.null_probability}});
    return json{{"N", r.n_qubits},           {"s", r.n_excited},
                {"d_of_s", r.d_of_s},        {"n_dark_expected", r.n_dark_expected.str()},
                {"nullity", r.nullity},      {"tolerance", r.tolerance},
                {"profile", r.profile_label}, {"per_arrangement", arr}};
}

inline std::string protocol_csv(const ProtocolResult& r) {
    std::ostringstream os;
    os << "excited,pattern,null_probability\n";
    for (const auto& a : r.per_arrangement)
        os << '"' << excited_labels(a.arrangement) << "\"," << pattern_string(a.arrangement, r.n_qubits) << ','
           << decimal12(a.null_probability) << '\n';
    return os.str();
}

inline json montecarlo_json(const MonteCarloResult& r) {
    json arr = json::array();
    for (const auto& a : r.per_arrangement)
        arr.push_back({{"excited", excited_labels(a.arrangement)},
                       {"null_probability", a.null_probability},
                       {"null_events", a.null_events}});
    return json{{"N", r.n_qubits},
                {"s", r.n_excited},
                {"trials_per_arrangement", r.trials_per_arrangement},
                {"seed", r.seed},
                {"estimated_d", r.estimated_d},
                {"standard_error", r.standard_error},
                {"exact_d", r.exact_d},
                {"per_arrangement", arr}};
}

inline std::string montecarlo_csv(const MonteCarloResult& r) {
    std::ostringstream os;
    os << "excited,pattern,null_probability,null_events,trials\n";
    for (const auto& a : r.per_arrangement)
        os << '"' << excited_labels(a.arrangement) << "\"," << pattern_string(a.arrangement, r.n_qubits) << ','
           << decimal12(a.null_probability) << ',' << a.null_events << ',' << r.trials_per_arrangement << '\n';
    return os.str();
}

// ---- dark basis -------------------------------------------------------------

inline json dark_basis_json(const DarkSubspace& sub) {
    json states = json::array();
    for (Eigen::Index c = 0; c < sub.basis.cols(); ++c) {
        json comps = json::array();
        for (std::size_t i = 0; i < sub.sector.size(); ++i) {
            const cplx a = sub.basis(static_cast<Eigen::Index>(i), c);
            if (std::abs(a) == 0.0) continue;
            comps.push_back({{"excited", excited_labels(sub.sector[i])}, {"amplitude", {a.real(), a.imag()}}});
        }
        states.push_back(comps);
    }
    return json{{"N", sub.sector.n_qubits()}, {"s", sub.sector.n_excited()}, {"nullity", sub.nullity},
                {"tolerance", sub.tolerance_used}, {"states", states}};
}

// ---- trajectories -----------------------------------------------------------

inline json trajectory_config_json(const TrajectoryConfig& c) {
    json j{{"N", c.model.n_qubits},
           {"kappa", c.kappa},
           {"t_max", c.t_max},
           {"dt", c.dt},
           {"n_trajectories", c.n_trajectories},
           {"seed", c.seed},
           {"n_photon_max", c.model.n_photon_max},
           {"omega", c.model.omega},
           {"waiting_threshold", c.waiting_threshold},
           {"couplings", profile_to_json(c.model.profile)}};
    if (c.initial_state)
        j["initial"] = "superposition";
    else
        j["initial"] = excited_labels(c.initial);
    return j;
}

inline json click_statistics_json(const ClickStatistics& s) {
    return json{{"n_trajectories", s.n_trajectories},
                {"n_no_click", s.n_no_click},
                {"n_click", s.n_click},
                {"p_no_click", s.p_no_click},
                {"standard_error", s.standard_error},
                {"survival_probability", s.survival_probability},
                {"max_norm_error", s.max_norm_error},
                {"first_click_times",
                 {{"count", s.first_click_times.count},
                  {"mean", s.first_click_times.mean},
                  {"min", s.first_click_times.min},
                  {"median", s.first_click_times.median},
                  {"max", s.first_click_times.max}}},
                {"histogram_bin_width", s.histogram_bin_width},
                {"first_click_histogram", s.first_click_histogram}};
}

inline std::string histogram_csv(const ClickStatistics& s) {
    std::ostringstream os;
    os << "t_low,t_high,clicks\n";
    for (std::size_t i = 0; i < s.first_click_histogram.size(); ++i)
        os << decimal12(s.histogram_bin_width * static_cast<double>(i)) << ','
           << decimal12(s.histogram_bin_width * static_cast<double>(i + 1)) << ',' << s.first_click_histogram[i]
           << '\n';
    return os.str();
}

/// Output envelope: schema version, command name, configuration echo and payload.
inline json envelope(const std::string& command, const json& config, const json& result) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}, {"config", config}, {"result", result}};
}

}  // namespace darkcount::io
