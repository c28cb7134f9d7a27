#include "quatlab/canon.hpp"
#include "quatlab/closure.hpp"
#include "quatlab/eig.hpp"
#include "quatlab/ideal.hpp"
#include "quatlab/identities.hpp"
#include "quatlab/json_io.hpp"
#include "quatlab/w2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace quatlab;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

json cx_json(const Cd& z) { return json::array({z.re, z.im}); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_canon(const std::string& file) {
    QMatrixD A = qmatrix_from_json<double>(load_json(file));
    CanonicalResult r = canonical_form(A);
    json out{{"alpha", cx_json(r.form.alpha)},
             {"beta", cx_json(r.form.beta)},
             {"z1", r.form.z1},
             {"z3", r.form.z3},
             {"p", r.p},
             {"unitary", to_json(r.unitary)},
             {"residual", r.residual}};
    emit(out);
    return 0;
}

int cmd_equiv(const std::string& fa, const std::string& fb, const std::string& mode) {
    bool eq;
    std::vector<int> diff;
    if (mode == "exact") {
        QMatrixQ A = qmatrix_from_json<Rat>(load_json(fa));
        QMatrixQ B = qmatrix_from_json<Rat>(load_json(fb));
        auto p = invariants(A), q = invariants(B);
        for (int k = 0; k < 6; ++k)
            if (p[k] != q[k]) diff.push_back(k + 1);
        eq = diff.empty();
    } else {
        QMatrixD A = qmatrix_from_json<double>(load_json(fa));
        QMatrixD B = qmatrix_from_json<double>(load_json(fb));
        diff = differing_invariants(invariants(A), invariants(B));
        eq = diff.empty();
    }
    emit(json{{"equivalent", eq}, {"differing_invariants", diff}});
    return eq ? 0 : 1;
}

int cmd_eig(const std::string& file) {
    QMatrixD A = qmatrix_from_json<double>(load_json(file));
    json vals = json::array();
    for (const Cd& z : eigenvalues(A)) vals.push_back(cx_json(z));
    emit(json{{"eigenvalues", vals}});
    return 0;
}

int cmd_w2(const std::string& fa, const std::string& fb) {
    QMatrixD A = qmatrix_from_json<double>(load_json(fa));
    QMatrixD B = qmatrix_from_json<double>(load_json(fb));
    W2Verdict v = w2_membership(A, B);
    json out{{"member", v.member}, {"case", v.case_tag}};
    out["witness"] = v.has_witness ? to_json(v.P) : json(nullptr);
    emit(out);
    return v.member ? 0 : 1;
}

int cmd_qt(const std::string& file, std::size_t d_max, std::uint64_t seed) {
    json j = load_json(file);
    const json& arr = j.is_array() ? j : j.at("generators");
    std::vector<QMatrixQ> gens;
    for (const auto& g : arr) gens.push_back(qmatrix_from_json<Rat>(g));
    AlgebraBasis alg = algebra_closure(gens);
    bool qt = is_quasi_triangularizable(alg, d_max);
    json out{{"dimension", alg.dimension()}, {"quasi_triangularizable", qt}};
    out["witness_pair"] = json(nullptr);
    if (!qt) {
        Rng rng(seed);
        for (int t = 0; t < 2000; ++t) {
            QMatrixQ A = span_sample(alg, rng);
            QMatrixQ B = span_sample(alg, rng);
            Rat v = tr_comm_cube(A, B);
            if (v != 0) {
                out["witness_pair"] = json{{"a", to_json(A)},
                                           {"b", to_json(B)},
                                           {"tr_comm_cube", rat_to_string(v)}};
                break;
            }
        }
    }
    emit(out);
    return qt ? 0 : 1;
}

int cmd_identities(std::uint64_t seed, int samples, double tolerance) {
    Rng rng(seed);
    bool qident_zero = true;
    for (int s = 0; s < samples; ++s) {
        auto x = rng.rational_quaternion(4), y = rng.rational_quaternion(4);
        for (unsigned m = 0; m <= 5 && qident_zero; ++m)
            for (unsigned n = 0; n <= 5; ++n)
                if (check_qident<Rat>(m, n, x, y) != 0) {
                    qident_zero = false;
                    break;
                }
    }
    double max_res = 0;
    for (int s = 0; s < samples; ++s) {
        auto p = rng.pure_unit_quaternion(), q = rng.pure_unit_quaternion();
        std::vector<double> ts, us;
        int k = 1 + static_cast<int>(rng.uniform_int(0, 3));
        for (int i = 0; i < k; ++i) {
            ts.push_back(rng.uniform(-2, 2));
            us.push_back(rng.uniform(-2, 2));
        }
        max_res = std::max(max_res, check_one_param_identity(p, q, ts, us));
        auto pp = rng.pure_quaternion(), qq = rng.pure_quaternion();
        max_res = std::max(max_res, check_prop42a(pp, qq, rng.uniform(-2, 2), rng.uniform(-2, 2)));
    }
    bool pass = qident_zero && max_res < tolerance;
    emit(json{{"power_identity_exact_zero", qident_zero},
              {"one_param_max_residual", max_res},
              {"tolerance", tolerance},
              {"all_pass", pass}});
    return pass ? 0 : 1;
}

int cmd_dims(int max_total, std::uint64_t seed, const std::string& format) {
    if (max_total > 10) throw std::invalid_argument("--max-total is capped at 10");
    IdealConfig cfg;
    cfg.seed = seed;
    std::vector<BidegreeEntry> entries;
    for (int s = 1; s <= max_total; ++s)
        for (int k = s; k >= 0; --k) entries.push_back(dim_bigraded(k, s - k, cfg));
    if (format == "csv") {
        std::cout << "k,l,monomials,span_dim,rank_on_w2,d_kl,rank_stable\n";
        for (const auto& e : entries)
            std::cout << e.k << "," << e.l << "," << e.monomials << "," << e.span_dim << ","
                      << e.rank_on_w2 << "," << e.d_kl << "," << (e.rank_stable ? 1 : 0)
                      << "\n";
    } else {
        json rows = json::array();
        for (const auto& e : entries)
            rows.push_back(json{{"k", e.k},
                                {"l", e.l},
                                {"monomials", e.monomials},
                                {"span_dim", e.span_dim},
                                {"rank_on_w2", e.rank_on_w2},
                                {"d_kl", e.d_kl},
                                {"rank_stable", e.rank_stable}});
        emit(json{{"max_total", max_total}, {"entries", rows}});
    }
    return 0;
}

int cmd_msg(int m, std::uint64_t seed) {
    IdealConfig cfg;
    cfg.seed = seed;
    MsgStep step = msg_step(m, cfg);
    json cells = json::array();
    for (const auto& c : step.cells) {
        json gens = json::array();
        for (const auto& g : c.new_generators) gens.push_back(to_string(g));
        cells.push_back(json{{"k", c.k},
                             {"l", c.l},
                             {"d_kl", c.d_kl},
                             {"dim_prev", c.dim_prev},
                             {"new_count", c.new_count},
                             {"generators", gens}});
    }
    emit(json{{"m", step.m}, {"cells", cells}});
    return 0;
}

int cmd_jacobian(const std::string& point_file, std::uint64_t seed) {
    QMatrixQ A, B;
    if (!point_file.empty()) {
        json j = load_json(point_file);
        A = qmatrix_from_json<Rat>(j.at("a"));
        B = qmatrix_from_json<Rat>(j.at("b"));
    } else {
        Rng rng(seed);
        A = random_integer_qmatrix(rng, 2, 3);
        B = random_integer_qmatrix(rng, 2, 3);
    }
    auto gens = table2_generators();
    std::vector<TracePoly> fs;
    for (const auto& name : {"f1", "f2", "f3", "f6"})
        for (const auto& g : gens)
            if (g.name == name) fs.push_back(g.poly);
    emit(json{{"rank", jacobian_rank(fs, A, B)}});
    return 0;
}

int cmd_table1() {
    json rows = json::array();
    bool all_ok = true;
    auto pairs = table1_witnesses();
    for (int i = 0; i < 6; ++i) {
        auto diff = differing_invariants(invariants(pairs[i].first), invariants(pairs[i].second));
        bool ok = diff == std::vector<int>{i + 1};
        all_ok = all_ok && ok;
        rows.push_back(json{{"row", i + 1}, {"differing", diff}, {"expected", i + 1}, {"ok", ok}});
    }
    emit(json{{"rows", rows}, {"all_ok", all_ok}});
    return all_ok ? 0 : 1;
}

int cmd_problem83() {
    QMatrixQ A(2, 2), B(2, 2);
    A(0, 0) = Quaternion<Rat>(Rat(1));
    B(0, 1) = Quaternion<Rat>(Rat(1));
    B(1, 0) = Quaternion<Rat>(Rat(1));
    json values;
    bool all_zero = true;
    for (const auto& g : table2_generators()) {
        Rat v;
        for (const auto& [fac, c] : g.poly.terms) v += c * eval_monomial(fac, A, B);
        values[g.name] = rat_to_string(v);
        if (v != 0) all_zero = false;
    }
    emit(json{{"a", to_json(A)}, {"b", to_json(B)}, {"values", values}, {"all_zero", all_zero}});
    return all_zero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic linear algebra and invariant-theory toolkit"};
    app.require_subcommand(1);

    std::string file_a, file_b, mode = "float", format = "json", point_file;
    std::uint64_t seed = 0;
    int samples = 200, max_total = 8, msg_m = 9;
    std::size_t d_max = 12;
    double tolerance = 1e-10;

    auto* canon = app.add_subcommand("canon", "canonical upper-triangular form of a 2x2 matrix");
    canon->add_option("matrix", file_a)->required();

    auto* equiv = app.add_subcommand("equiv", "Sp(2)-equivalence of two 2x2 matrices");
    equiv->add_option("a", file_a)->required();
    equiv->add_option("b", file_b)->required();
    equiv->add_option("--mode", mode)->check(CLI::IsMember({"exact", "float"}));

    auto* eigc = app.add_subcommand("eig", "eigenvalues of a quaternionic matrix");
    eigc->add_option("matrix", file_a)->required();

    auto* w2c = app.add_subcommand("w2", "simultaneous triangularizability of a 2x2 pair");
    w2c->add_option("a", file_a)->required();
    w2c->add_option("b", file_b)->required();

    auto* qtc = app.add_subcommand("qt", "quasi-triangularizability of a generated algebra");
    qtc->add_option("gens", file_a)->required();
    qtc->add_option("--max-dim", d_max);
    qtc->add_option("--seed", seed);

    auto* idc = app.add_subcommand("identities", "randomized trace-identity verification");
    idc->add_option("--seed", seed);
    idc->add_option("--samples", samples);
    idc->add_option("--tolerance", tolerance);

    auto* dims = app.add_subcommand("dims", "bigraded dimension table");
    dims->add_option("--max-total", max_total);
    dims->add_option("--seed", seed);
    dims->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* msgc = app.add_subcommand("msg", "minimal-generating-set step counts");
    msgc->add_option("--m", msg_m);
    msgc->add_option("--seed", seed);

    auto* jac = app.add_subcommand("jacobian", "rank of the generator Jacobian at a point");
    jac->add_option("--point", point_file);
    jac->add_option("--seed", seed);

    app.add_subcommand("table1", "invariant minimality witness suite");
    app.add_subcommand("problem83", "evaluate all generators at the non-member pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit(json{{"error", e.what()}});
        return 2;
    }

    try {
        if (canon->parsed()) return cmd_canon(file_a);
        if (equiv->parsed()) return cmd_equiv(file_a, file_b, mode);
        if (eigc->parsed()) return cmd_eig(file_a);
        if (w2c->parsed()) return cmd_w2(file_a, file_b);
        if (qtc->parsed()) return cmd_qt(file_a, d_max, seed);
        if (idc->parsed()) return cmd_identities(seed, samples, tolerance);
        if (dims->parsed()) return cmd_dims(max_total, seed, format);
        if (msgc->parsed()) return cmd_msg(msg_m, seed);
        if (jac->parsed()) return cmd_jacobian(point_file, seed);
        if (app.get_subcommand("table1")->parsed()) return cmd_table1();
        if (app.get_subcommand("problem83")->parsed()) return cmd_problem83();
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}});
        return 2;
    }
    return 2;
}
