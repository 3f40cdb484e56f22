#include "mfw/problem_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfw/errors.hpp"
#include "mfw/presets.hpp"

namespace mfw {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("problem file: " + msg);
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
    if (!obj.is_object()) fail(ctx + " must be an object");
    for (const char* key : required)
        if (!obj.contains(key)) fail(ctx + " is missing required field '" + key + "'");
    std::set<std::string> allowed;
    for (const char* key : required) allowed.insert(key);
    for (const char* key : optional) allowed.insert(key);
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            fail(ctx + " has unknown field '" + item.key() + "'");
}

double as_number(const json& v, const std::string& ctx) {
    if (!v.is_number()) fail(ctx + " must be a number");
    return v.get<double>();
}

Vector as_vector(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty()) fail(ctx + " must be a non-empty array of numbers");
    Vector out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(ctx + " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Matrix as_matrix(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty()) fail(ctx + " must be a non-empty array of rows");
    std::vector<Vector> rows;
    rows.reserve(v.size());
    for (const auto& r : v) rows.push_back(as_vector(r, ctx + " row"));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) fail(ctx + " rows have differing lengths");
    return matrix_from_rows(rows);
}

FeasibleSet parse_set(const json& v) {
    if (!v.is_object()) fail("'set' must be an object");
    if (!v.contains("kind")) fail("'set' is missing required field 'kind'");
    if (!v["kind"].is_string()) fail("'set.kind' must be a string");
    const std::string kind = v["kind"].get<std::string>();
    if (kind == "lp_ball") {
        check_keys(v, "'set'", {"kind", "p", "radius", "center"}, {});
        double p;
        if (v["p"].is_string() && v["p"].get<std::string>() == "inf")
            p = std::numeric_limits<double>::infinity();
        else
            p = as_number(v["p"], "'set.p'");
        return make_norm_ball(p, as_number(v["radius"], "'set.radius'"),
                              as_vector(v["center"], "'set.center'"));
    }
    if (kind == "polytope") {
        check_keys(v, "'set'", {"kind", "A", "b"}, {"vertices"});
        Matrix A = as_matrix(v["A"], "'set.A'");
        Vector b = as_vector(v["b"], "'set.b'");
        std::vector<Vector> vertices;
        if (v.contains("vertices")) {
            if (!v["vertices"].is_array()) fail("'set.vertices' must be an array");
            for (const auto& vert : v["vertices"])
                vertices.push_back(as_vector(vert, "'set.vertices' entry"));
        }
        return make_polytope(std::move(A), std::move(b), std::move(vertices));
    }
    fail("'set.kind' must be 'lp_ball' or 'polytope', got '" + kind + "'");
}

RunConfig parse_config(const json& v) {
    check_keys(v, "'config'", {},
               {"max_iters", "theta_tol", "subproblem_tol", "L_override",
                "record_theta_tilde", "x0"});
    RunConfig cfg;
    if (v.contains("max_iters")) {
        if (!v["max_iters"].is_number_integer())
            fail("'config.max_iters' must be an integer");
        cfg.max_iters = v["max_iters"].get<int>();
    }
    if (v.contains("theta_tol")) cfg.theta_tol = as_number(v["theta_tol"], "'config.theta_tol'");
    if (v.contains("subproblem_tol"))
        cfg.subproblem_tol = as_number(v["subproblem_tol"], "'config.subproblem_tol'");
    if (v.contains("L_override")) cfg.L_override = as_number(v["L_override"], "'config.L_override'");
    if (v.contains("record_theta_tilde")) {
        if (!v["record_theta_tilde"].is_boolean())
            fail("'config.record_theta_tilde' must be a boolean");
        cfg.record_theta_tilde = v["record_theta_tilde"].get<bool>();
    }
    if (v.contains("x0")) cfg.x0 = as_vector(v["x0"], "'config.x0'");
    return cfg;
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");

    ProblemSpec spec;
    if (root.contains("preset")) {
        check_keys(root, "problem", {"preset"}, {});
        if (!root["preset"].is_string()) fail("'preset' must be a string");
        const std::string name = root["preset"].get<std::string>();
        if (!is_preset_name(name)) fail("unknown preset '" + name + "'");
        Preset preset = make_preset(name);
        spec.objective = std::move(preset.objective);
        spec.set = std::move(preset.set);
        spec.config = preset.config;
        spec.reference_point = preset.efficient_point;
        spec.preset = name;
        return spec;
    }

    check_keys(root, "problem", {"objectives", "set"}, {"config", "reference"});
    if (!root["objectives"].is_array() || root["objectives"].empty())
        fail("'objectives' must be a non-empty array");
    std::vector<QuadraticComponent> parts;
    for (const auto& o : root["objectives"]) {
        check_keys(o, "'objectives' entry", {"A", "b"}, {});
        QuadraticComponent q;
        q.A = as_matrix(o["A"], "objective 'A'");
        q.b = as_vector(o["b"], "objective 'b'");
        parts.push_back(std::move(q));
    }
    spec.objective = make_multiobjective(std::move(parts));
    spec.set = parse_set(root["set"]);
    if (root.contains("config")) spec.config = parse_config(root["config"]);
    if (root.contains("reference"))
        spec.reference_point = as_vector(root["reference"], "'reference'");
    if (ambient_dim(spec.set) != spec.objective.dim)
        fail("'set' dimension does not match the objectives");
    if (spec.reference_point && spec.reference_point->size() != spec.objective.dim)
        fail("'reference' dimension does not match the objectives");
    if (spec.config.x0 && spec.config.x0->size() != spec.objective.dim)
        fail("'config.x0' dimension does not match the objectives");
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& tok, std::size_t line_no) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("history csv line " + std::to_string(line_no) +
                                    ": bad number '" + tok + "'");
    return v;
}

}  // namespace

void write_history_csv(const std::string& path, const RunHistory& history) {
    if (history.records.empty())
        throw std::invalid_argument("refusing to write an empty history");
    const std::size_t n = history.records.front().x.size();
    const std::size_t m = history.records.front().F.size();
    const bool tilde = history.records.front().theta_tilde_value.has_value();

    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write history file '" + path + "'");
    out << "# fingerprint=" << history.fingerprint << " n=" << n << " m=" << m
        << " termination=" << termination_name(history.termination) << "\n";
    out << "k";
    for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
    for (std::size_t j = 1; j <= m; ++j) out << ",F" << j;
    out << ",theta_fw,gamma,d_norm";
    if (tilde) out << ",theta_tilde";
    out << "\n";
    for (const IterateRecord& rec : history.records) {
        out << rec.k;
        for (double v : rec.x) out << ',' << fmt17(v);
        for (double v : rec.F) out << ',' << fmt17(v);
        out << ',' << fmt17(rec.theta_fw) << ',' << fmt17(rec.gamma) << ','
            << fmt17(rec.d_norm);
        if (tilde) {
            if (!rec.theta_tilde_value)
                throw std::invalid_argument("history mixes rows with and without theta_tilde");
            out << ',' << fmt17(*rec.theta_tilde_value);
        }
        out << "\n";
    }
    if (!out.flush()) throw std::runtime_error("failed writing history file '" + path + "'");
}

RunHistory read_history_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open history file '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("history csv: file is empty");

    RunHistory hist;
    std::size_t n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string tag;
        hs >> tag;
        if (tag != "#")
            throw std::invalid_argument("history csv: missing '# fingerprint=...' comment line");
        std::string token;
        bool saw_fp = false, saw_n = false, saw_m = false, saw_term = false;
        while (hs >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("history csv: bad comment token '" + token + "'");
            const std::string key = token.substr(0, eq);
            const std::string val = token.substr(eq + 1);
            if (key == "fingerprint") {
                hist.fingerprint = val;
                saw_fp = true;
            } else if (key == "n") {
                n = std::stoul(val);
                saw_n = true;
            } else if (key == "m") {
                m = std::stoul(val);
                saw_m = true;
            } else if (key == "termination") {
                if (val == "converged")
                    hist.termination = Termination::converged;
                else if (val == "iteration-cap")
                    hist.termination = Termination::iteration_cap;
                else if (val == "solver-failure")
                    hist.termination = Termination::solver_failure;
                else
                    throw std::invalid_argument("history csv: unknown termination '" + val + "'");
                saw_term = true;
            } else {
                throw std::invalid_argument("history csv: unknown comment key '" + key + "'");
            }
        }
        if (!saw_fp || !saw_n || !saw_m || !saw_term)
            throw std::invalid_argument("history csv: comment line must carry fingerprint, n, m, termination");
        if (n == 0 || m == 0)
            throw std::invalid_argument("history csv: n and m must be positive");
    }

    if (!std::getline(in, line))
        throw std::invalid_argument("history csv: missing header row");
    std::string expected = "k";
    for (std::size_t i = 1; i <= n; ++i) expected += ",x" + std::to_string(i);
    for (std::size_t j = 1; j <= m; ++j) expected += ",F" + std::to_string(j);
    expected += ",theta_fw,gamma,d_norm";
    bool tilde = false;
    if (line == expected + ",theta_tilde")
        tilde = true;
    else if (line != expected)
        throw std::invalid_argument("history csv: unexpected header '" + line + "'");

    const std::size_t ncols = 1 + n + m + 3 + (tilde ? 1 : 0);
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto toks = split_csv(line);
        if (toks.size() != ncols)
            throw std::invalid_argument("history csv line " + std::to_string(line_no) +
                                        ": expected " + std::to_string(ncols) +
                                        " columns, found " + std::to_string(toks.size()));
        IterateRecord rec;
        std::size_t t = 0;
        rec.k = static_cast<int>(parse_double(toks[t++], line_no));
        rec.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) rec.x[i] = parse_double(toks[t++], line_no);
        rec.F.resize(m);
        for (std::size_t j = 0; j < m; ++j) rec.F[j] = parse_double(toks[t++], line_no);
        rec.theta_fw = parse_double(toks[t++], line_no);
        rec.gamma = parse_double(toks[t++], line_no);
        rec.d_norm = parse_double(toks[t++], line_no);
        if (tilde) rec.theta_tilde_value = parse_double(toks[t++], line_no);
        rec.full_step = rec.gamma >= 1.0;
        hist.records.push_back(std::move(rec));
    }
    if (hist.records.empty())
        throw std::invalid_argument("history csv: no data rows");
    return hist;
}

}  // namespace mfw
