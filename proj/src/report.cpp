#include "qdt/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "qdt/errors.hpp"
#include "qdt/linalg.hpp"

namespace qdt {

namespace {

using ordered_json = nlohmann::ordered_json;

double clean(double v) {
    return v == 0.0 ? 0.0 : v;  // drop the sign of negative zero
}

std::string exact(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << clean(v);
    return os.str();
}

std::string fixed(double v, int digits = 10) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << clean(v);
    auto text = os.str();
    if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
    return text;
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(6) << clean(v);
    return os.str();
}

ordered_json probability_json(const ProbabilityReport& r) {
    ordered_json out;
    out["mode"] = to_string(r.mode);
    auto rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json jr;
        jr["label"] = row.label;
        jr["p"] = clean(row.p);
        jr["f"] = clean(row.f);
        jr["q"] = clean(row.q);
        rows.push_back(std::move(jr));
    }
    out["prospects"] = std::move(rows);
    out["sum_p"] = clean(r.sum_p);
    out["sum_f"] = clean(r.sum_f);
    out["sum_q"] = clean(r.sum_q);
    return out;
}

ordered_json lift_json(const LiftResult& lift) {
    ordered_json out;
    out["nu"] = lift.nu;
    out["converged_nu"] = lift.nu[lift.converged_index];
    out["final_change"] = lift.final_change;
    auto branches = ordered_json::array();
    for (const auto& b : lift.branches) {
        ordered_json jb;
        jb["group"] = b.group;
        jb["branch"] = b.branch;
        jb["split_coefficient"] = clean(b.split_coefficient);
        jb["probability"] = clean(b.probability);
        jb["trajectory"] = b.trajectory;
        branches.push_back(std::move(jb));
    }
    out["branches"] = std::move(branches);
    auto groups = ordered_json::array();
    for (const auto& g : lift.groups) {
        ordered_json jg;
        jg["group"] = g.group;
        jg["eigenvalue"] = clean(g.eigenvalue);
        jg["multiplicity"] = g.multiplicity;
        jg["total"] = clean(g.total);
        jg["subspace_probability"] = clean(g.subspace_probability);
        groups.push_back(std::move(jg));
    }
    out["groups"] = std::move(groups);
    return out;
}

void lift_table(std::ostringstream& os, const char* name, const LiftResult& lift) {
    os << "\ndegeneracy lifting (" << name << "), converged at nu = " << sci(lift.nu[lift.converged_index])
       << ", last change " << sci(lift.final_change) << "\n";
    os << std::left << std::setw(8) << "group" << std::setw(8) << "branch" << std::setw(18) << "gamma_split"
       << "probability\n";
    for (const auto& b : lift.branches) {
        os << std::left << std::setw(8) << b.group << std::setw(8) << b.branch << std::setw(18)
           << fixed(b.split_coefficient, 8) << fixed(b.probability) << "\n";
    }
    for (const auto& g : lift.groups) {
        os << "group " << g.group << " (eigenvalue " << fixed(g.eigenvalue, 6) << ", multiplicity " << g.multiplicity
           << "): total " << fixed(g.total) << ", Tr(rho P) " << fixed(g.subspace_probability) << "\n";
    }
}

std::optional<LiftResult> run_lift(const std::optional<ObservableSpec>& spec, const Observable& obs,
                                   const ComplexMatrix& reduced_rho, std::uint64_t seed, const Tolerances& tol) {
    if (!spec || !spec->lift) {
        return std::nullopt;
    }
    LiftConfig cfg;
    cfg.nu_sequence = spec->lift->nu_sequence;
    cfg.convergence_tol = spec->lift->convergence_tol;
    cfg.gamma = spec->lift->gamma ? *spec->lift->gamma : default_gamma(obs, seed, cfg.convergence_tol, tol);
    return lift_degeneracy(obs, cfg, StatisticalState(reduced_rho.hermitian_part(), tol), tol);
}

}  // namespace

std::string scenario_digest(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunReport run_scenario(const ParsedScenario& parsed, std::string_view text, const RunOptions& options) {
    const auto& tol = options.tolerances;
    const auto& s = parsed.scenario;
    const auto resolved = resolve_scenario(s, tol);

    RunReport report;
    report.digest = scenario_digest(text);
    report.seed = options.seed;
    report.dim_a = s.dim_a;
    report.dim_b = s.dim_b;
    report.mode = options.mode_override.value_or(s.mode);
    report.warnings = parsed.warnings;
    report.warnings.insert(report.warnings.end(), resolved.lattice.warnings.begin(), resolved.lattice.warnings.end());
    report.unity_defect = resolved.lattice.unity_defect;
    report.raw = evaluate(resolved.lattice, resolved.state, Mode::Raw, tol);
    try {
        report.normalized = evaluate(resolved.lattice, resolved.state, Mode::Normalized, tol);
    } catch (const DegenerateNormalization& e) {
        if (report.mode != Mode::Raw) throw;
        report.warnings.push_back(std::string("normalized block omitted: ") + e.what());
    }
    report.entanglement = necessary_conditions_report(resolved.lattice, resolved.state, tol);
    for (const auto& pe : report.entanglement.prospects) {
        report.separability.push_back(
            SeparabilityRow{pe.label, pe.residual_norm, pe.entangled ? Verdict::Entangled : Verdict::Separable});
    }
    const auto& rho = resolved.state.rho();
    report.lift_a = run_lift(s.observable_a, resolved.observable_a,
                             partial_trace(rho, s.dim_a, s.dim_b, Subsystem::A), options.seed, tol);
    report.lift_b = run_lift(s.observable_b, resolved.observable_b,
                             partial_trace(rho, s.dim_a, s.dim_b, Subsystem::B), options.seed + 1, tol);
    return report;
}

std::string render(const RunReport& r, OutputFormat format) {
    const auto& sel = r.selected();
    if (format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "label,p,f,q\n";
        for (const auto& row : sel.rows) {
            os << row.label << "," << exact(row.p) << "," << exact(row.f) << "," << exact(row.q) << "\n";
        }
        return os.str();
    }
    if (format == OutputFormat::Json) {
        ordered_json out;
        out["tool"] = kToolName;
        out["version"] = kToolVersion;
        out["scenario_digest"] = r.digest;
        out["seed"] = r.seed;
        out["dim_a"] = r.dim_a;
        out["dim_b"] = r.dim_b;
        out["mode"] = to_string(r.mode);
        out["warnings"] = r.warnings;
        out["unity_defect"] = clean(r.unity_defect);
        out["raw"] = probability_json(r.raw);
        out["normalized"] = r.normalized ? probability_json(*r.normalized) : ordered_json(nullptr);
        auto sep = ordered_json::array();
        for (const auto& row : r.separability) {
            ordered_json js;
            js["label"] = row.label;
            js["residual_norm"] = clean(row.residual_norm);
            js["verdict"] = to_string(row.verdict);
            sep.push_back(std::move(js));
        }
        out["separability"] = std::move(sep);
        const auto& e = r.entanglement;
        ordered_json ent;
        ent["product_defect"] = clean(e.product.defect);
        ent["product_verdict"] = e.product.is_product ? "product" : "not_product";
        ent["ppt_min_eigenvalue"] = clean(e.ppt.min_eigenvalue);
        ent["ppt_verdict"] = to_string(e.ppt.verdict);
        auto residuals = ordered_json::array();
        for (const auto& pe : e.prospects) {
            ordered_json jp;
            jp["label"] = pe.label;
            jp["residual_norm"] = clean(pe.residual_norm);
            jp["entangled"] = pe.entangled;
            residuals.push_back(std::move(jp));
        }
        ent["prospect_residuals"] = std::move(residuals);
        ent["max_abs_q_normalized"] = e.max_abs_q_normalized ? ordered_json(clean(*e.max_abs_q_normalized)) : ordered_json(nullptr);
        ent["q_nonzero_possible"] = e.q_nonzero_possible;
        out["entanglement"] = std::move(ent);
        out["lift_a"] = r.lift_a ? lift_json(*r.lift_a) : ordered_json(nullptr);
        out["lift_b"] = r.lift_b ? lift_json(*r.lift_b) : ordered_json(nullptr);
        return out.dump(2) + "\n";
    }

    std::ostringstream os;
    os << kToolName << " " << kToolVersion << "  scenario " << r.digest << "  seed " << r.seed << "\n";
    os << "dims " << r.dim_a << " x " << r.dim_b << "  mode " << to_string(r.mode) << "  unity_defect "
       << sci(r.unity_defect) << "\n";
    for (const auto& w : r.warnings) {
        os << "warning: " << w << "\n";
    }
    os << "\n" << std::left << std::setw(16) << "label" << std::setw(16) << "p" << std::setw(16) << "f" << "q\n";
    for (const auto& row : sel.rows) {
        os << std::left << std::setw(16) << row.label << std::setw(16) << fixed(row.p) << std::setw(16)
           << fixed(row.f) << fixed(row.q) << "\n";
    }
    os << std::left << std::setw(16) << "sum" << std::setw(16) << fixed(sel.sum_p) << std::setw(16)
       << fixed(sel.sum_f) << fixed(sel.sum_q) << "\n";

    os << "\nseparability (HS residual)\n";
    for (const auto& row : r.separability) {
        os << std::left << std::setw(16) << row.label << std::setw(16) << sci(row.residual_norm)
           << to_string(row.verdict) << "\n";
    }
    const auto& e = r.entanglement;
    os << "\nstate entanglement\n";
    os << "product defect       " << sci(e.product.defect) << (e.product.is_product ? "  product" : "  not product")
       << "\n";
    os << "PPT min eigenvalue   " << sci(e.ppt.min_eigenvalue) << "  " << to_string(e.ppt.verdict) << "\n";
    os << "max |q| normalized   " << (e.max_abs_q_normalized ? sci(*e.max_abs_q_normalized) : std::string("n/a")) << "\n";
    os << "q nonzero possible   " << (e.q_nonzero_possible ? "yes" : "no") << "\n";
    if (r.lift_a) {
        lift_table(os, "observable_a", *r.lift_a);
    }
    if (r.lift_b) {
        lift_table(os, "observable_b", *r.lift_b);
    }
    return os.str();
}

std::string render(const QuarterLawResult& r, OutputFormat format) {
    static constexpr const char* model = "p ~ U[0,1], f = 1/2, q = p - f";
    if (format == OutputFormat::Json) {
        ordered_json out;
        out["command"] = "quarter";
        out["model"] = model;
        out["samples"] = r.samples;
        out["seed"] = r.seed;
        out["mean_abs_q"] = r.mean_abs_q;
        out["standard_error"] = r.standard_error;
        out["target"] = 0.25;
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "samples,seed,mean_abs_q,standard_error\n";
        os << r.samples << "," << r.seed << "," << exact(r.mean_abs_q) << "," << exact(r.standard_error) << "\n";
        return os.str();
    }
    os << "quarter law Monte Carlo (" << model << ")\n";
    os << "samples         " << r.samples << "\n";
    os << "seed            " << r.seed << "\n";
    os << "mean |q|        " << fixed(r.mean_abs_q) << "\n";
    os << "standard error  " << fixed(r.standard_error) << "\n";
    os << "analytic target " << fixed(0.25) << "\n";
    return os.str();
}

std::string render(const SurveySummary& s, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json out;
        out["command"] = "survey";
        out["dim_a"] = s.dim_a;
        out["dim_b"] = s.dim_b;
        out["scenarios"] = s.scenarios;
        out["seed"] = s.seed;
        out["count"] = s.count;
        out["mean"] = s.mean;
        out["standard_error"] = s.standard_error;
        out["p10"] = s.p10;
        out["p25"] = s.p25;
        out["median"] = s.median;
        out["p75"] = s.p75;
        out["p90"] = s.p90;
        out["max"] = s.max;
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "dim_a,dim_b,scenarios,seed,count,mean,standard_error,p10,p25,median,p75,p90,max\n";
        os << s.dim_a << "," << s.dim_b << "," << s.scenarios << "," << s.seed << "," << s.count << ","
           << exact(s.mean) << "," << exact(s.standard_error) << "," << exact(s.p10) << "," << exact(s.p25) << ","
           << exact(s.median) << "," << exact(s.p75) << "," << exact(s.p90) << "," << exact(s.max) << "\n";
        return os.str();
    }
    os << "normalized |q| survey over random pure states (" << s.dim_a << " x " << s.dim_b << ")\n";
    os << "scenarios       " << s.scenarios << "\n";
    os << "seed            " << s.seed << "\n";
    os << "samples (|q_n|) " << s.count << "\n";
    if (s.count == 0) {
        os << "(empty)\n";
        return os.str();
    }
    os << "mean |q|        " << fixed(s.mean) << "\n";
    os << "standard error  " << fixed(s.standard_error) << "\n";
    os << "p10 / p25       " << fixed(s.p10) << " / " << fixed(s.p25) << "\n";
    os << "median          " << fixed(s.median) << "\n";
    os << "p75 / p90       " << fixed(s.p75) << " / " << fixed(s.p90) << "\n";
    os << "max             " << fixed(s.max) << "\n";
    return os.str();
}

std::string render(const DoubleSlitGeometry& g, const std::vector<FringeRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json out;
        out["command"] = "double-slit";
        out["detectors"] = g.detectors;
        out["wavenumber"] = g.wavenumber;
        out["slit_separation"] = g.slit_separation;
        out["screen_distance"] = g.screen_distance;
        out["screen_span"] = g.screen_span;
        auto jr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row;
            row["detector"] = r.detector;
            row["x"] = clean(r.x);
            row["p"] = clean(r.p);
            row["f"] = clean(r.f);
            row["q"] = clean(r.q);
            jr.push_back(std::move(row));
        }
        out["fringes"] = std::move(jr);
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "detector,x,p,f,q\n";
        for (const auto& r : rows) {
            os << r.detector << "," << exact(r.x) << "," << exact(r.p) << "," << exact(r.f) << "," << exact(r.q)
               << "\n";
        }
        return os.str();
    }
    os << "double slit: " << g.detectors << " detectors, k = " << fixed(g.wavenumber, 6)
       << ", d = " << fixed(g.slit_separation, 3) << ", L = " << fixed(g.screen_distance, 3)
       << ", span = " << fixed(g.screen_span, 3) << "\n\n";
    os << std::left << std::setw(10) << "detector" << std::setw(14) << "x" << std::setw(16) << "p" << std::setw(16)
       << "f" << "q\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(10) << r.detector << std::setw(14) << fixed(r.x, 6) << std::setw(16)
           << fixed(r.p) << std::setw(16) << fixed(r.f) << fixed(r.q) << "\n";
    }
    return os.str();
}

Scenario double_slit_scenario(const DoubleSlitGeometry& g) {
    Scenario s;
    s.dim_a = g.detectors;
    s.dim_b = 2;
    s.state.kind = StateSpec::Kind::Pure;
    s.state.vector = double_slit_state(g);
    for (const auto& pi : double_slit_prospects(g)) {
        s.prospects.push_back(ProspectSpec{pi.label, pi.event_a, pi.uncertain_b.amplitudes});
    }
    s.mode = Mode::Normalized;
    return s;
}

}  // namespace qdt
