#include "cclab/report.hpp"

#include <json.hpp>

namespace cclab {

using nlohmann::json;

static json witness_json(const Witness& w) {
    json j;
    j["symbol"] = w.symbol;
    j["component"] = w.component;
    j["residual"] = w.residual.str();
    json a = json::object();
    for (const auto& [v, val] : w.assignment) a[v.str()] = rat_str(val);
    j["assignment"] = a;
    j["value"] = rat_str(w.value);
    j["realization"] = w.realization_text;
    return j;
}

static json verdict_json(const Verdict& v) {
    json j;
    j["value"] = v.value;
    j["method"] = verdict_method_str(v.method);
    if (v.witness) j["witness"] = witness_json(*v.witness);
    return j;
}

std::string AnalysisReport::to_json(int indent) const {
    json j;
    j["name"] = name;
    j["n"] = dim;
    j["shape"] = shape;
    j["homogeneous"] = {{"is", homogeneous.is_homogeneous}, {"degree", homogeneous.degree}};
    j["levels"] = levels;
    j["zero_integral"] = verdict_json(zero_integral);
    if (null_lagrangian) {
        json nl;
        nl["value"] = null_lagrangian->value;
        if (null_lagrangian->witness)
            nl["residual"] = null_lagrangian->witness->residual.str();
        j["null_lagrangian"] = nl;
    } else {
        j["null_lagrangian"] = {{"value", nullptr}};
    }
    json h;
    if (h1.value)
        h["value"] = *h1.value;
    else
        h["value"] = nullptr;
    h["theorem"] = h1.theorem;
    j["h1_regular"] = h;
    json det = json::object();
    for (const auto& [k, s] : criterion_details) det[k] = rat_str(s);
    j["criterion_details"] = det;
    json nc;
    if (numeric) {
        nc["trials"] = numeric->trials;
        nc["max_rel_integral"] = numeric->max_rel_integral;
        if (!zero_integral.value) nc["witness_rel_integral"] = numeric->witness_rel_integral;
        nc["agrees"] = numeric->agrees;
    } else {
        nc["trials"] = 0;
    }
    j["numeric_check"] = nc;
    j["flags"] = flags;
    return j.dump(indent);
}

std::string reports_to_json(const std::vector<AnalysisReport>& reports, int indent) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(json::parse(r.to_json(indent)));
    return arr.dump(indent);
}

AnalysisReport analyze(const OperatorSpec& spec) {
    AnalysisReport rep;
    rep.name = spec.name;
    rep.dim = spec.dim;
    rep.homogeneous = spec.body.homogeneity();
    for (const auto& [level, sub] : scaling_decompose(spec)) rep.levels.push_back(level);
    rep.zero_integral = zero_integral(spec);
    if (!spec.has_constraints()) rep.null_lagrangian = null_lagrangian(spec);
    rep.h1 = h1_verdict(spec);

    std::optional<CoefficientTable> table;
    try {
        table = to_coefficient_table(spec);
    } catch (const NotMultilinear&) {
    }
    if (table) {
        rep.shape = "multilinear r=" + std::to_string(table->rank());
        if (table->slot_homogeneous()) rep.shape += " slot-homogeneous";
    } else {
        rep.shape = "polynomial";
    }

    if (table && table->rank() == 2 && table->unconstrained()) {
        Verdict bc = bilinear_criterion(*table);
        rep.criterion_details = bc.details;
        if (bc.value != rep.zero_integral.value) {
            rep.internal_inconsistency = true;
            rep.flags.push_back("internal_inconsistency: coefficient criterion disagrees with the variational verdict");
        }
        if (table->slot_homogeneous()) {
            Verdict hc = homogeneous_criterion(*table);
            if (hc.value != bc.value) {
                rep.internal_inconsistency = true;
                rep.flags.push_back("internal_inconsistency: unsigned criterion disagrees with the signed one on slot-homogeneous input");
            }
        }
    }
    if (table && table->rank() >= 3 && table->unconstrained() && table->slot_homogeneous()) {
        Verdict c44 = condition_44(*table);
        rep.criterion_details = c44.details;
        rep.conjecture_agrees = (c44.value == rep.zero_integral.value);
        if (!*rep.conjecture_agrees)
            rep.flags.push_back("finding: multilinear coefficient condition disagrees with the variational verdict");
    }
    if (auto parity = parity_classify(spec)) {
        bool expect = false;
        if (table && table->rank() == 2 && table->unconstrained())
            expect = bilinear_criterion(*table).value;
        if (parity->verdict.value != expect) {
            rep.internal_inconsistency = true;
            rep.flags.push_back("internal_inconsistency: parity rule disagrees with the coefficient criterion");
        }
        rep.flags.push_back("parity_shape:" + parity_shape_str(parity->shape));
    }

    for (const auto& e : spec.expectations) {
        std::optional<bool> computed;
        if (e.key == "zero_integral") computed = rep.zero_integral.value;
        if (e.key == "null_lagrangian" && rep.null_lagrangian)
            computed = rep.null_lagrangian->value;
        if (e.key == "h1_regular") computed = rep.h1.value;
        std::string line = "expectation_check:" + e.key + " expected=" +
                           (e.value ? "true" : "false");
        if (computed) {
            line += std::string(" computed=") + (*computed ? "true" : "false") +
                    " agree=" + ((*computed == e.value) ? "true" : "false");
        } else {
            line += " computed=none agree=false";
        }
        rep.flags.push_back(line);
    }
    return rep;
}

}  // namespace cclab
