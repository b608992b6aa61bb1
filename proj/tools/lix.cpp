#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "lix/error.hpp"
#include "lix/json_io.hpp"
#include "lix/power_oracle.hpp"
#include "lix/specseq.hpp"

namespace {

using lix::Json;

int max_dim_from_env() {
    const char* v = std::getenv("LIX_MAX_DIM");
    if (!v) return 64;
    int n = std::atoi(v);
    return n > 0 ? n : 64;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

Json load_input(const std::string& path, bool unshifted) {
    Json j = lix::load_json_file(path);
    return unshifted ? lix::shift_input_degrees(std::move(j)) : std::move(j);
}

lix::CurvedAlgebra load_curved(const std::string& path, bool unshifted) {
    Json j = load_input(path, unshifted);
    if (lix::json_is_ainfty(j))
        throw lix::Error(lix::ErrorCode::SchemaError,
                         path + ": expected a curved algebra file, found structure maps");
    return lix::algebra_from_json(j, max_dim_from_env());
}

Json relation_report_json(const lix::CurvedAlgebra& alg, const lix::RelationReport& rel,
                          const lix::FiltrationReport& filt) {
    Json violations = Json::array();
    for (const auto& v : rel.violations) {
        Json tuple = Json::array();
        for (int i : v.tuple) tuple.push_back(alg.space->at(i).id);
        violations.push_back(
            {{"n", v.n}, {"tuple", tuple}, {"defect", lix::element_to_json(v.defect)}});
    }
    Json fviol = Json::array();
    for (const auto& v : filt.violations) {
        Json tuple = Json::array();
        for (int i : v.tuple) tuple.push_back(alg.space->at(i).id);
        fviol.push_back({{"arity", v.arity},
                         {"tuple", tuple},
                         {"valueWeight", v.value_weight},
                         {"requiredWeight", v.required_weight}});
    }
    return Json{{"relations",
                 {{"pass", rel.pass()},
                  {"checkedUpTo", rel.checked_up_to},
                  {"vacuousAbove", rel.vacuous_above},
                  {"violations", violations}}},
                {"filtration", {{"pass", filt.pass()}, {"violations", fviol}}}};
}

int cmd_validate(const std::string& path, bool unshifted) {
    Json j = load_input(path, unshifted);
    int cap = max_dim_from_env();
    if (lix::json_is_ainfty(j)) {
        try {
            lix::AInftyAlgebra a = lix::ainfty_from_json(j, cap);
            lix::StasheffReport rep = lix::validate_ainfty(a);
            emit(Json{{"kind", "ainfty"},
                      {"pass", true},
                      {"checkedWordLength", rep.checked_word_length},
                      {"weightCap", a.weight_cap}});
            return 0;
        } catch (const lix::Error& e) {
            if (e.code() != lix::ErrorCode::StasheffViolation) throw;
            emit(Json{{"kind", "ainfty"}, {"pass", false}, {"violation", e.what()}});
            return 1;
        }
    }
    lix::CurvedAlgebra alg = lix::algebra_from_json(j, cap);
    lix::RelationReport rel =
        lix::check_relations(alg, 2 * alg.brackets.max_arity() - 1);
    lix::FiltrationReport filt = lix::check_filtration_compatibility(alg);
    auto degs = lix::check_degree_homogeneity(alg);
    Json report = relation_report_json(alg, rel, filt);
    report["kind"] = "curved";
    Json dviol = Json::array();
    for (const auto& v : degs) {
        Json tuple = Json::array();
        for (int i : v.tuple) tuple.push_back(alg.space->at(i).id);
        dviol.push_back({{"arity", v.arity}, {"tuple", tuple}});
    }
    report["degrees"] = Json{{"pass", degs.empty()}, {"violations", dviol}};
    bool pass = rel.pass() && filt.pass() && degs.empty();
    report["pass"] = pass;
    emit(report);
    return pass ? 0 : 1;
}

int cmd_oracle(const std::string& path, bool unshifted) {
    lix::CurvedAlgebra alg = load_curved(path, unshifted);
    lix::OracleReport rep = lix::run_oracle(alg);
    Json mism = Json::array();
    for (const auto& [n, tuple] : rep.polarize_mismatches) {
        Json t = Json::array();
        for (int i : tuple) t.push_back(alg.space->at(i).id);
        mism.push_back({{"arity", n}, {"tuple", t}});
    }
    Json failures = Json::array();
    for (const auto& [n, r] : rep.master_failures) {
        Json fj = Json::array();
        for (const auto& f : r.failures)
            fj.push_back({{"sample", f.sample},
                          {"form", f.first_form ? "derivative" : "odd-variable"},
                          {"defect", f.defect}});
        failures.push_back({{"arity", n}, {"failures", fj}});
    }
    emit(Json{{"pass", rep.pass()},
              {"polarizeMatches", rep.polarize_matches},
              {"polarizeMismatches", mism},
              {"masterEquationFailures", failures}});
    return rep.pass() ? 0 : 1;
}

int cmd_specseq(const std::string& path, bool unshifted, int page_r, int total_degree,
                bool have_total) {
    lix::CurvedAlgebra alg = load_curved(path, unshifted);
    Json entries = Json::array();
    bool all_zero = true;
    for (int p = 1; p < alg.space->nilpotency_bound(); ++p) {
        for (int deg : alg.space->occupied_degrees()) {
            int q = deg - p;
            if (have_total && deg != total_degree) continue;
            lix::PageEntry e = lix::page(alg, page_r, p, q);
            if (e.numerator_dim == 0 && e.dimension == 0) continue;
            entries.push_back({{"p", p}, {"q", q}, {"dim", e.dimension}});
            if (e.dimension != 0) all_zero = false;
        }
    }
    Json report{{"r", page_r}, {"entries", entries}};
    if (have_total) report["totalDegree"] = total_degree;
    emit(report);
    return have_total ? (all_zero ? 0 : 1) : 0;
}

int cmd_solve_mc(const std::string& path, bool unshifted, int r) {
    lix::CurvedAlgebra alg = load_curved(path, unshifted);
    lix::SolveResult res = lix::solve_mc(alg, r);
    if (res.ok()) {
        Json report{{"status", "success"},
                    {"certificate", lix::certificate_to_json(*res.certificate)},
                    {"verified", lix::verify_certificate(alg, *res.certificate)}};
        emit(report);
        return 0;
    }
    if (res.status == lix::SolveStatus::CurvatureTooLow) {
        emit(Json{{"status", "hypothesis-failed"},
                  {"reason", "CurvatureTooLow"},
                  {"curvatureFiltration", lix::weight_str(lix::curvature_filtration(alg))},
                  {"required", 2 * r + 1}});
        return 1;
    }
    const lix::Obstruction& ob = *res.obstruction;
    emit(Json{{"status", "hypothesis-failed"},
              {"reason", "Obstructed"},
              {"k", ob.k},
              {"page", {{"r", r + 1}, {"p", ob.p}, {"q", ob.q}}},
              {"class", lix::element_to_json(ob.class_representative)}});
    return 1;
}

int cmd_verify(const std::string& alg_path, const std::string& cert_path, bool unshifted) {
    lix::CurvedAlgebra alg = load_curved(alg_path, unshifted);
    Json cj = lix::load_json_file(cert_path);
    lix::MCCertificate cert = lix::certificate_from_json(cj, alg.space);
    bool ok = lix::verify_certificate(alg, cert);
    emit(Json{{"valid", ok}});
    return ok ? 0 : 1;
}

int cmd_defcomplex(const std::string& a_path, const std::string& b_path, bool unshifted,
                   int weight_cap) {
    int cap = max_dim_from_env();
    lix::AInftyAlgebra A = lix::ainfty_from_json(load_input(a_path, unshifted), cap);
    lix::AInftyAlgebra B = lix::ainfty_from_json(load_input(b_path, unshifted), cap);
    lix::DefComplex D = lix::def_complex(A, B, weight_cap);
    Json report{{"homDimension", D.hom_space->dim()},
                {"maxArity", D.algebra.brackets.max_arity()},
                {"algebra", lix::algebra_to_json(D.algebra)}};
    emit(report);
    return 0;
}

int cmd_formality(const std::string& h_path, const std::string& htt_path, bool unshifted,
                  int weight_cap, int r) {
    int cap = max_dim_from_env();
    lix::AInftyAlgebra H = lix::ainfty_from_json(load_input(h_path, unshifted), cap);
    lix::AInftyAlgebra HTT = lix::ainfty_from_json(load_input(htt_path, unshifted), cap);
    lix::FormalityVerdict v = lix::intrinsic_formality_check(H, HTT, r, weight_cap);
    Json report{{"formal", v.formal},
                {"curvatureInF3", v.curvature_in_F3},
                {"oneBracketRaisesFiltration", v.one_bracket_raises_filtration},
                {"pageIdentification", v.page_identification_ok},
                {"acyclicInTotalDegree1", v.acyclic_total_degree_1}};
    if (!v.note.empty()) report["note"] = v.note;
    if (v.certificate) report["certificate"] = lix::certificate_to_json(*v.certificate);
    if (v.morphism) {
        Json weights = Json::object();
        const lix::Element& F = v.morphism->def_element;
        for (int k = 0; k <= weight_cap; ++k) {
            lix::Element comp(F.space());
            for (const auto& [i, c] : F.coeffs())
                if (F.space()->at(i).weight == k + 1) comp.set_coeff(i, c);
            if (!comp.is_zero())
                weights[std::to_string(k)] = lix::element_to_json(comp);
        }
        report["morphismWeightComponents"] = weights;
    }
    if (v.obstruction) {
        report["obstruction"] = {{"p", v.obstruction->p},
                                 {"q", v.obstruction->q},
                                 {"homWeight", v.obstruction_hom_weight},
                                 {"class", lix::element_to_json(v.obstruction->class_representative)}};
    }
    emit(report);
    return v.formal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for filtered curved shifted L-infinity algebras"};
    app.require_subcommand(1);
    bool unshifted = false;
    app.add_flag("--unshifted", unshifted,
                 "input degrees follow the unshifted convention; shift them down by one");

    std::string in_a, in_b;
    int page_r = 1, total_degree = 0, solver_r = 1, weight_cap = 3;

    auto* validate = app.add_subcommand("validate", "check the structure equations");
    validate->add_option("file", in_a)->required();

    auto* oracle = app.add_subcommand("oracle", "power-series master equation cross-check");
    oracle->add_option("file", in_a)->required();

    auto* specseq = app.add_subcommand("specseq", "page dimension table");
    specseq->add_option("file", in_a)->required();
    specseq->add_option("--page", page_r, "page index r")->required();
    auto* td = specseq->add_option("--total-degree", total_degree,
                                   "restrict to p+q = N and report vanishing");

    auto* solve = app.add_subcommand("solve-mc", "construct a Maurer-Cartan element");
    solve->add_option("file", in_a)->required();
    solve->add_option("--r", solver_r, "page parameter r")->required();

    auto* verify = app.add_subcommand("verify", "replay a solver certificate");
    verify->add_option("algebra", in_a)->required();
    verify->add_option("certificate", in_b)->required();

    auto* defc = app.add_subcommand("defcomplex", "materialize a deformation complex");
    defc->add_option("A", in_a)->required();
    defc->add_option("B", in_b)->required();
    defc->add_option("--weight-cap", weight_cap)->required();

    auto* formality = app.add_subcommand("formality", "intrinsic-formality pipeline");
    formality->add_option("H", in_a)->required();
    formality->add_option("HTT", in_b)->required();
    formality->add_option("--weight-cap", weight_cap)->required();
    formality->add_option("--r", solver_r, "page parameter r (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(in_a, unshifted);
        if (app.got_subcommand(oracle)) return cmd_oracle(in_a, unshifted);
        if (app.got_subcommand(specseq))
            return cmd_specseq(in_a, unshifted, page_r, total_degree, td->count() > 0);
        if (app.got_subcommand(solve)) return cmd_solve_mc(in_a, unshifted, solver_r);
        if (app.got_subcommand(verify)) return cmd_verify(in_a, in_b, unshifted);
        if (app.got_subcommand(defc)) return cmd_defcomplex(in_a, in_b, unshifted, weight_cap);
        if (app.got_subcommand(formality))
            return cmd_formality(in_a, in_b, unshifted, weight_cap, solver_r);
    } catch (const lix::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
