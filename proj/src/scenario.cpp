#include "qdt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdt/errors.hpp"

namespace qdt {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path.empty() ? key : path + "." + key, "missing required field");
    }
    return *it;
}

std::string child(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "number is not finite");
    }
    return v;
}

std::size_t read_dimension(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
        fail(path, "expected a positive integer");
    }
    return j.get<std::size_t>();
}

std::size_t read_index(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

cplx read_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        fail(path, "complex number must be a two-element array [re, im]");
    }
    return {read_number(j[0], index(path, 0)), read_number(j[1], index(path, 1))};
}

ComplexVector read_vector(const json& j, const std::string& path) {
    if (!j.is_array()) {
        fail(path, "expected an array of complex numbers");
    }
    ComplexVector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(read_complex(j[i], index(path, i)));
    }
    return v;
}

ComplexMatrix read_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<cplx> entries;
    for (std::size_t i = 0; i < rows; ++i) {
        const auto row = read_vector(j[i], index(path, i));
        if (i == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            fail(index(path, i), "row length " + std::to_string(row.size()) + " differs from " + std::to_string(cols));
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
            fail(child(path, key), "unknown field");
        }
    }
}

std::optional<ObservableSpec> read_observable(const json& top, const char* key) {
    auto it = top.find(key);
    if (it == top.end() || it->is_null()) {
        return std::nullopt;
    }
    const std::string path = key;
    if (!it->is_object()) {
        fail(path, "expected an object with a \"matrix\" field");
    }
    reject_unknown_keys(*it, {"matrix", "lift"}, path);
    ObservableSpec spec;
    spec.matrix = read_matrix(require(*it, "matrix", path), child(path, "matrix"));
    if (auto lift = it->find("lift"); lift != it->end() && !lift->is_null()) {
        const std::string lpath = child(path, "lift");
        if (!lift->is_object()) {
            fail(lpath, "expected an object");
        }
        reject_unknown_keys(*lift, {"gamma", "nu_sequence", "convergence_tol"}, lpath);
        LiftSpec ls;
        if (auto g = lift->find("gamma"); g != lift->end() && !g->is_null()) {
            ls.gamma = read_matrix(*g, child(lpath, "gamma"));
        }
        if (auto nu = lift->find("nu_sequence"); nu != lift->end()) {
            if (!nu->is_array()) {
                fail(child(lpath, "nu_sequence"), "expected an array of numbers");
            }
            ls.nu_sequence.clear();
            for (std::size_t i = 0; i < nu->size(); ++i) {
                ls.nu_sequence.push_back(read_number((*nu)[i], index(child(lpath, "nu_sequence"), i)));
            }
        }
        if (auto ct = lift->find("convergence_tol"); ct != lift->end()) {
            ls.convergence_tol = read_number(*ct, child(lpath, "convergence_tol"));
        }
        spec.lift = std::move(ls);
    }
    return spec;
}

Scenario read_document(const json& top) {
    if (!top.is_object()) {
        fail("(document)", "top level must be a JSON object");
    }
    reject_unknown_keys(top, {"dim_a", "dim_b", "state", "observable_a", "observable_b", "prospects", "mode"}, "");

    Scenario s;
    s.dim_a = read_dimension(require(top, "dim_a", ""), "dim_a");
    s.dim_b = read_dimension(require(top, "dim_b", ""), "dim_b");

    const auto& state = require(top, "state", "");
    if (!state.is_object()) {
        fail("state", "expected an object");
    }
    const auto& kind = require(state, "kind", "state");
    if (kind == "pure") {
        reject_unknown_keys(state, {"kind", "vector"}, "state");
        s.state.kind = StateSpec::Kind::Pure;
        s.state.vector = read_vector(require(state, "vector", "state"), "state.vector");
    } else if (kind == "mixed") {
        reject_unknown_keys(state, {"kind", "matrix"}, "state");
        s.state.kind = StateSpec::Kind::Mixed;
        s.state.matrix = read_matrix(require(state, "matrix", "state"), "state.matrix");
    } else {
        fail("state.kind", "expected \"pure\" or \"mixed\"");
    }

    s.observable_a = read_observable(top, "observable_a");
    s.observable_b = read_observable(top, "observable_b");

    const auto& prospects = require(top, "prospects", "");
    if (!prospects.is_array()) {
        fail("prospects", "expected an array");
    }
    for (std::size_t i = 0; i < prospects.size(); ++i) {
        const std::string path = index("prospects", i);
        const auto& p = prospects[i];
        if (!p.is_object()) {
            fail(path, "expected an object");
        }
        reject_unknown_keys(p, {"label", "event_a", "amplitudes"}, path);
        ProspectSpec ps;
        const auto& label = require(p, "label", path);
        if (!label.is_string()) {
            fail(child(path, "label"), "expected a string");
        }
        ps.label = label.get<std::string>();
        ps.event_a = read_index(require(p, "event_a", path), child(path, "event_a"));
        ps.amplitudes = read_vector(require(p, "amplitudes", path), child(path, "amplitudes"));
        s.prospects.push_back(std::move(ps));
    }

    if (auto m = top.find("mode"); m != top.end() && !m->is_null()) {
        if (*m == "raw") {
            s.mode = Mode::Raw;
        } else if (*m == "normalized") {
            s.mode = Mode::Normalized;
        } else {
            fail("mode", "expected \"raw\" or \"normalized\"");
        }
    }
    return s;
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void validate(const Scenario& s, std::vector<std::string>& warnings, const Tolerances& tol) {
    const std::size_t dim = s.dim_a * s.dim_b;
    if (s.state.kind == StateSpec::Kind::Pure) {
        if (s.state.vector.size() != dim) {
            throw ValidationError("state.vector: length " + std::to_string(s.state.vector.size()) +
                                  " does not match dim_a*dim_b = " + std::to_string(dim));
        }
        const double n = norm(s.state.vector);
        if (!(n > 0.0)) {
            throw ValidationError("state.vector: zero vector");
        }
        if (std::abs(n - 1.0) > 1e-6) {
            std::ostringstream os;
            os << "state.vector: norm " << n << " renormalized to 1";
            warnings.push_back(os.str());
        }
    } else {
        if (s.state.matrix.rows() != dim || s.state.matrix.cols() != dim) {
            throw ValidationError("state.matrix: must be " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        if (auto why = describe_state_violation(s.state.matrix, tol); !why.empty()) {
            throw ValidationError("state.matrix: " + why);
        }
    }
    auto check_obs = [&](const std::optional<ObservableSpec>& o, std::size_t d, const char* name) {
        if (!o) {
            return;
        }
        if (o->matrix.rows() != d || o->matrix.cols() != d) {
            throw ValidationError(std::string(name) + ".matrix: must be " + std::to_string(d) + "x" +
                                  std::to_string(d));
        }
        if (!o->matrix.is_hermitian(tol.hermitian_rel)) {
            throw ValidationError(std::string(name) + ".matrix: not Hermitian");
        }
        if (o->lift) {
            LiftConfig cfg;
            cfg.gamma = o->lift->gamma.value_or(ComplexMatrix::identity(d));
            cfg.nu_sequence = o->lift->nu_sequence;
            cfg.convergence_tol = o->lift->convergence_tol;
            try {
                validate_lift_config(cfg, d, tol);
            } catch (const Error& e) {
                throw ValidationError(std::string(name) + ".lift: " + e.what());
            }
        }
    };
    check_obs(s.observable_a, s.dim_a, "observable_a");
    check_obs(s.observable_b, s.dim_b, "observable_b");

    if (s.prospects.empty()) {
        throw ValidationError("prospects: at least one prospect is required");
    }
    const std::size_t n_events = s.observable_a ? Observable(s.observable_a->matrix, tol).degeneracy_groups().size()
                                                : s.dim_a;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < s.prospects.size(); ++i) {
        const auto& p = s.prospects[i];
        const std::string path = index("prospects", i);
        if (p.event_a >= n_events) {
            throw ValidationError(path + ".event_a: " + std::to_string(p.event_a) + " out of range (" +
                                  std::to_string(n_events) + " events on factor A)");
        }
        if (!seen.insert(p.event_a).second) {
            throw ValidationError(path + ".event_a: event " + std::to_string(p.event_a) + " used twice");
        }
        if (p.amplitudes.size() != s.dim_b) {
            throw ValidationError(path + ".amplitudes: length " + std::to_string(p.amplitudes.size()) +
                                  " does not match dim_b = " + std::to_string(s.dim_b));
        }
        if (std::all_of(p.amplitudes.begin(), p.amplitudes.end(), [](cplx z) { return z == cplx{}; })) {
            throw ValidationError(path + ".amplitudes: all amplitudes are zero");
        }
    }
    if (seen.size() != n_events) {
        throw ValidationError("prospects: event_a indices must cover all " + std::to_string(n_events) +
                              " factor-A events exactly once");
    }
}

ordered_json write_complex(cplx z) {
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json write_vector(const ComplexVector& v) {
    auto out = ordered_json::array();
    for (const auto& z : v) {
        out.push_back(write_complex(z));
    }
    return out;
}

ordered_json write_matrix(const ComplexMatrix& m) {
    auto out = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(write_complex(m(i, j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json write_observable(const std::optional<ObservableSpec>& o) {
    if (!o) {
        return nullptr;
    }
    ordered_json out;
    out["matrix"] = write_matrix(o->matrix);
    if (o->lift) {
        ordered_json lift;
        lift["gamma"] = o->lift->gamma ? write_matrix(*o->lift->gamma) : ordered_json(nullptr);
        lift["nu_sequence"] = o->lift->nu_sequence;
        lift["convergence_tol"] = o->lift->convergence_tol;
        out["lift"] = std::move(lift);
    }
    return out;
}

}  // namespace

ParsedScenario parse_scenario(std::string_view text, const Tolerances& tol) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    ParsedScenario out;
    out.scenario = read_document(doc);
    validate(out.scenario, out.warnings, tol);
    return out;
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json doc;
    doc["dim_a"] = s.dim_a;
    doc["dim_b"] = s.dim_b;
    ordered_json state;
    if (s.state.kind == StateSpec::Kind::Pure) {
        state["kind"] = "pure";
        state["vector"] = write_vector(s.state.vector);
    } else {
        state["kind"] = "mixed";
        state["matrix"] = write_matrix(s.state.matrix);
    }
    doc["state"] = std::move(state);
    doc["observable_a"] = write_observable(s.observable_a);
    doc["observable_b"] = write_observable(s.observable_b);
    auto prospects = ordered_json::array();
    for (const auto& p : s.prospects) {
        ordered_json jp;
        jp["label"] = p.label;
        jp["event_a"] = p.event_a;
        jp["amplitudes"] = write_vector(p.amplitudes);
        prospects.push_back(std::move(jp));
    }
    doc["prospects"] = std::move(prospects);
    doc["mode"] = to_string(s.mode);
    return doc.dump(2) + "\n";
}

ResolvedScenario resolve_scenario(const Scenario& s, const Tolerances& tol) {
    Observable obs_a = s.observable_a ? Observable(s.observable_a->matrix, tol) : Observable::computational(s.dim_a);
    Observable obs_b = s.observable_b ? Observable(s.observable_b->matrix, tol) : Observable::computational(s.dim_b);
    CompositeSystem sys = build_product(obs_a, obs_b);
    StatisticalState state = s.state.kind == StateSpec::Kind::Pure ? StatisticalState::from_pure(s.state.vector, tol)
                                                                   : StatisticalState(s.state.matrix, tol);
    std::vector<Prospect> prospects;
    for (const auto& p : s.prospects) {
        prospects.push_back(Prospect{p.label, p.event_a, UncertainEvent{p.amplitudes}});
    }
    ProspectLattice lattice = assemble_lattice(std::move(prospects), sys, tol);
    return ResolvedScenario{std::move(obs_a), std::move(obs_b), std::move(sys), std::move(state), std::move(lattice)};
}

}  // namespace qdt
