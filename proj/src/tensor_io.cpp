#include "meixner/tensor_io.hpp"

#include <cmath>
#include <fstream>

namespace meixner {

namespace {

double finite_number(const Json& j, const std::string& where) {
    if (!j.is_number())
        throw InputError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(where + ": value is not finite");
    return v;
}

} // namespace

MeixnerSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("tensor file: expected a JSON object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw InputError("tensor file: missing integer field 'dimension'");
    const int d = j["dimension"].get<int>();
    if (d <= 0) throw InputError("tensor file: dimension must be positive");

    std::vector<std::tuple<int, int, int, double>> raw;
    if (j.contains("alpha")) {
        if (!j["alpha"].is_array())
            throw InputError("tensor file: 'alpha' must be an array");
        for (const Json& e : j["alpha"]) {
            if (!e.is_object() || !e.contains("index") || !e.contains("value") ||
                !e["index"].is_array() || e["index"].size() != 3)
                throw InputError(
                    "tensor file: alpha entries need {\"index\":[i,j,k],\"value\":x}");
            for (const Json& ix : e["index"])
                if (!ix.is_number_integer())
                    throw InputError("tensor file: alpha indices must be integers");
            raw.emplace_back(e["index"][0].get<int>(), e["index"][1].get<int>(),
                             e["index"][2].get<int>(),
                             finite_number(e["value"], "alpha value"));
        }
    }

    SymmetricCubicTensor alpha(d);
    try {
        alpha = tensor_from_entries(d, raw);
    } catch (const IndexOutOfRange& e) {
        throw InputError(std::string("tensor file: ") + e.what());
    }

    Mat beta = Mat::Identity(d, d);
    if (j.contains("beta")) {
        if (!j["beta"].is_array() || static_cast<int>(j["beta"].size()) != d)
            throw InputError("tensor file: 'beta' must be a d x d array");
        for (int r = 0; r < d; ++r) {
            if (!j["beta"][r].is_array() || static_cast<int>(j["beta"][r].size()) != d)
                throw InputError("tensor file: 'beta' must be a d x d array");
            for (int c = 0; c < d; ++c)
                beta(r, c) = finite_number(j["beta"][r][c], "beta entry");
        }
    }

    Vec mean = Vec::Zero(d);
    if (j.contains("mean")) {
        if (!j["mean"].is_array() || static_cast<int>(j["mean"].size()) != d)
            throw InputError("tensor file: 'mean' must be a length-d array");
        for (int r = 0; r < d; ++r)
            mean(r) = finite_number(j["mean"][r], "mean entry");
    }

    return MeixnerSpec(std::move(alpha), std::move(beta), std::move(mean));
}

MeixnerSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

Json spec_to_json(const MeixnerSpec& spec) {
    const int d = spec.dimension();
    Json alpha = Json::array();
    for (const auto& [i, j, k] : spec.alpha.canonical_triples()) {
        const double v = spec.alpha(i, j, k);
        if (v != 0.0)
            alpha.push_back({{"index", {i, j, k}}, {"value", v}});
    }
    Json beta = Json::array();
    for (int r = 0; r < d; ++r) {
        Json row = Json::array();
        for (int c = 0; c < d; ++c) row.push_back(spec.beta(r, c));
        beta.push_back(row);
    }
    Json mean = Json::array();
    for (int r = 0; r < d; ++r) mean.push_back(spec.mean(r));
    return Json{{"dimension", d},
                {"alpha", alpha},
                {"beta", beta},
                {"mean", mean}};
}

Json lcc_report_to_json(const LccReport& rep) {
    return Json{{"pass", rep.pass()},
                {"beta_symmetric", rep.beta_symmetric},
                {"beta_psd", rep.beta_psd},
                {"normalized", rep.normalized},
                {"tensor_symmetric", rep.tensor_symmetric},
                {"violations", rep.violations}};
}

Json obstruction_report_to_json(const ObstructionReport& rep) {
    Json entries = Json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"i", e.i},
                           {"j", e.j},
                           {"n", e.n},
                           {"max_abs_coefficient", e.max_abs_raw},
                           {"max_abs_normalized", e.max_abs_normalized}});
    return Json{{"pass", rep.pass}, {"tol", rep.tol}, {"entries", entries}};
}

Json classification_to_json(const Classification3& cls) {
    Json j;
    switch (cls.kind) {
    case Classification3::Kind::CaseI:
        j["variant"] = "case1";
        j["a"] = cls.a;
        break;
    case Classification3::Kind::CaseII: {
        j["variant"] = "case2";
        Json comps = Json::array();
        for (const Marginal1D& m : cls.components)
            comps.push_back(
                {{"kind", m.kind == Marginal1D::Kind::Gaussian ? "gaussian" : "gamma"},
                 {"b", m.b},
                 {"shape", m.shape},
                 {"scale", m.scale},
                 {"shift", m.shift}});
        j["components"] = comps;
        break;
    }
    case Classification3::Kind::Rejected:
        j["variant"] = "rejected";
        j["reason"] = cls.reason;
        j["obstructions"] = obstruction_report_to_json(cls.obstructions);
        break;
    }
    if (cls.kind != Classification3::Kind::Rejected) {
        Json rows = Json::array();
        for (int r = 0; r < 3; ++r)
            rows.push_back({cls.U(r, 0), cls.U(r, 1), cls.U(r, 2)});
        j["U"] = rows;
    }
    return j;
}

Json verify_report_to_json(const VerifyReport& rep, bool include_timings) {
    Json checks = Json::array();
    for (const VerifyCheck& c : rep.checks) {
        Json e{{"name", c.name},
               {"description", c.description},
               {"skipped", c.skipped}};
        if (c.skipped) {
            e["skip_reason"] = c.skip_reason;
        } else {
            e["tolerance"] = c.tolerance;
            e["observed"] = c.observed;
            e["pass"] = c.pass;
            if (include_timings) e["wall_ms"] = c.wall_ms;
        }
        checks.push_back(e);
    }
    return Json{{"pass", rep.pass()}, {"checks", checks}};
}

} // namespace meixner
