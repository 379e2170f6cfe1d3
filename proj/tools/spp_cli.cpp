// spp_cli: batch front end over the strict plane partition process library.
// One subcommand per computation cluster; JSON documents with sorted keys,
// CSV tables with '\n' line endings, byte-identical output for identical
// argv.  Exit codes: 0 success, 2 flag errors, 1 computation errors (with a
// machine-readable error JSON on standard error).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spp/asymptotics.hpp"
#include "spp/correlation.hpp"
#include "spp/schur.hpp"
#include "spp/stats.hpp"

using json = nlohmann::json;

namespace {

// Bad flag values are reported on stderr and exit with code 2, before any
// computation starts.
struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw FlagError(std::string(what) + ": could not parse number '" + text + "'");
    }
}

// Inclusive grid "start:stop:step".
std::vector<double> parse_grid(const std::string& text, const char* what) {
    double a = 0.0, b = 0.0, s = 0.0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &s, &tail) != 3)
        throw FlagError(std::string(what) + ": grid must be start:stop:step, got '" + text + "'");
    if (!(s > 0.0) || b < a)
        throw FlagError(std::string(what) + ": grid needs step > 0 and stop >= start");
    std::vector<double> out;
    long n = static_cast<long>(std::floor((b - a) / s + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * s);
    return out;
}

// Either a scalar --name or a grid --name-grid, exactly one of the two.
std::vector<double> parse_axis(const std::string& scalar, const std::string& grid,
                               const char* name) {
    if (!scalar.empty() && !grid.empty())
        throw FlagError(std::string("--") + name + " and --" + name + "-grid are exclusive");
    if (!scalar.empty()) return {parse_double(scalar, name)};
    if (!grid.empty()) return parse_grid(grid, name);
    throw FlagError(std::string("need --") + name + " or --" + name + "-grid");
}

struct QValue {
    double value = 0.0;
    std::optional<spp::rational> exact;  // set when given as "p/q"
};

QValue parse_q(const std::string& text) {
    if (text.empty()) throw FlagError("--q is required");
    QValue q;
    if (text.find('/') != std::string::npos) {
        try {
            q.exact = spp::parse_rational(text);
        } catch (const std::exception& e) {
            throw FlagError(std::string("--q: ") + e.what());
        }
        q.value = spp::to_double(*q.exact);
    } else {
        q.value = parse_double(text, "--q");
    }
    if (!(q.value > 0.0 && q.value < 1.0)) throw FlagError("--q must lie in (0,1)");
    return q;
}

spp::PointConfiguration parse_points(const std::string& text) {
    if (text.empty()) throw FlagError("--points is required");
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw FlagError(std::string("--points: not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw FlagError("--points: expected a nonempty array of [t, x] pairs");
    std::vector<std::pair<int, int>> pts;
    for (const auto& item : doc) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer())
            throw FlagError("--points: each entry must be an integer pair [t, x]");
        pts.emplace_back(item[0].get<int>(), item[1].get<int>());
    }
    try {
        return spp::PointConfiguration(pts);
    } catch (const std::exception& e) {
        throw FlagError(std::string("--points: ") + e.what());
    }
}

json points_json(const spp::PointConfiguration& X) {
    json arr = json::array();
    for (const auto& p : X.points) arr.push_back({p.first, p.second});
    return arr;
}

void emit(const std::string& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw spp::error("io_error", "cannot open output file '" + out_path + "'");
    f << doc;
    if (!f) throw spp::error("io_error", "failed writing output file '" + out_path + "'");
}

// --self-test: a handful of the same invariants the unit suite pins, so each
// subcommand can prove its module end to end from the installed binary.
int self_test(const std::string& name) {
    int checks = 0;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) throw spp::error("self_test_failed", name + ": " + what);
        ++checks;
    };

    if (name == "macmahon") {
        std::vector<long long> c = spp::macmahon_coeffs(8);
        std::vector<long long> brute(9, 0);
        spp::enumerate_spp(8, [&](const spp::StrictPlanePartition& pi) {
            brute[static_cast<std::size_t>(pi.volume())] += 1LL << spp::alternation(pi);
        });
        expect(c == brute, "product coefficients equal 2^A enumeration up to volume 8");
    } else if (name == "corr") {
        spp::MqParams params;
        params.q = 0.1;
        for (const auto& pts : {std::vector<std::pair<int, int>>{{0, 1}},
                                std::vector<std::pair<int, int>>{{0, 1}, {1, 1}}}) {
            spp::PointConfiguration X(pts);
            spp::CorrelationResult pf = spp::rho_pf(X, params);
            spp::CorrelationResult orc = spp::rho_oracle(X, params.q, 18);
            expect(std::fabs(pf.value - orc.value) <= orc.error_bound + 1e-8,
                   "Pfaffian matches enumeration oracle at q=0.1");
        }
    } else if (name == "oracle") {
        spp::CorrelationResult lead = spp::rho_oracle(spp::PointConfiguration({{0, 1}}), 1e-3, 20);
        expect(std::fabs(lead.value - 2e-3) < 2e-5, "leading order 2q at q=0.001");
        spp::CorrelationResult far = spp::rho_oracle(spp::PointConfiguration({{0, 22}}), 0.1, 12);
        expect(far.value == 0.0 && far.error_bound > 0.0,
               "part beyond the truncation sees only the tail bound");
    } else if (name == "kernel") {
        spp::MqParams params;
        params.q = 0.4;
        double a = spp::kernel_coeff(1, 2, 0, 0, params);
        double b = spp::kernel_coeff(2, 1, 0, 0, params);
        expect(std::fabs(a + b) < 1e-12, "antisymmetry off the anti-diagonal");
        double c = spp::kernel_coeff(1, -1, 0, 0, params);
        double d = spp::kernel_coeff(-1, 1, 0, 0, params);
        expect(std::fabs(c + d + 1.0) < 1e-12, "anti-diagonal defect (-1)^x at x=1");
        expect(std::fabs(spp::kernel_coeff(0, 0, 0, 0, params) - 0.5) < 1e-12,
               "K(0,0) = 1/2 at equal times");
    } else if (name == "density") {
        expect(std::fabs(spp::limiting_density({0.7, 0.0}) - 0.5) < 1e-14,
               "density 1/2 at chi = 0");
        expect(spp::theta({1.2, 0.9}) == spp::theta({-1.2, 0.9}), "theta even in tau");
        expect(spp::theta({1.0, 3.0}) == 0.0, "theta vanishes beyond the support edge");
    } else if (name == "shape") {
        spp::ShapePoint s = spp::limit_shape_point({0.0, 0.0});
        expect(std::fabs(s.x - 1.16624361612327512) < 1e-9,
               "height above the origin equals 4*Catalan/pi");
        expect(s.y == s.x && s.z == 0.0, "tau = 0 sits on the symmetry plane");
    } else if (name == "volume") {
        double r = -std::log(0.1), h = 1e-5;
        double fd = (spp::expected_volume(std::exp(-(r - h))) -
                     spp::expected_volume(std::exp(-(r + h)))) /
                    (2.0 * h);
        expect(std::fabs(spp::variance_volume(0.1) / fd - 1.0) < 1e-8,
               "variance equals -dE/dr by central finite difference");
    } else if (name == "qpqp-check") {
        double resid = spp::verify_qpqp(spp::StrictPartition({2, 1}), spp::StrictPartition({1}),
                                        spp::Specialization<double>{0.25},
                                        spp::Specialization<double>{0.2}, 20);
        expect(resid < 1e-9, "pairing identity residual below 1e-9");
    } else {
        throw spp::error("internal", "unknown self-test '" + name + "'");
    }

    json out;
    out["checks"] = checks;
    out["self_test"] = "ok";
    out["subcommand"] = name;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strict plane partition process toolkit"};
    app.require_subcommand(1);

    struct {
        std::string q, points, out;
        int max_n = -1, vmax = 20, window = -1, x = 0, y = 0, t1 = 0, t2 = 0;
        int max_weight = 3, cutoff = 20;
        double spec_x = 0.25, spec_y = 0.2;
        std::string tau, tau_grid, chi, chi_grid, r, r_grid;
        bool check_oracle = false;
        bool self[8] = {};
    } opt;

    CLI::App* macmahon = app.add_subcommand("macmahon", "exact 2^A generating coefficients");
    macmahon->add_option("--max-n", opt.max_n, "top volume (0..24)");
    macmahon->add_option("--out", opt.out, "output file (default stdout)");
    macmahon->add_flag("--self-test", opt.self[0], "run module invariants instead");

    CLI::App* corr = app.add_subcommand("corr", "Pfaffian correlation function");
    corr->add_option("--q", opt.q, "q in (0,1), decimal or exact p/q");
    corr->add_option("--points", opt.points, "JSON array of [t, x] pairs");
    corr->add_option("--window", opt.window, "series truncation (default: auto)");
    corr->add_flag("--check-oracle", opt.check_oracle, "also run the enumeration oracle");
    corr->add_option("--vmax", opt.vmax, "oracle truncation volume (default 20)");
    corr->add_option("--out", opt.out, "output file (default stdout)");
    corr->add_flag("--self-test", opt.self[1], "run module invariants instead");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force enumeration correlation");
    oracle->add_option("--q", opt.q, "q in (0,1), decimal or exact p/q");
    oracle->add_option("--points", opt.points, "JSON array of [t, x] pairs");
    oracle->add_option("--vmax", opt.vmax, "truncation volume (default 20)");
    oracle->add_option("--out", opt.out, "output file (default stdout)");
    oracle->add_flag("--self-test", opt.self[2], "run module invariants instead");

    CLI::App* kernel = app.add_subcommand("kernel", "single correlation kernel entry");
    kernel->add_option("--q", opt.q, "q in (0,1)");
    kernel->add_option("--x", opt.x, "first exponent");
    kernel->add_option("--y", opt.y, "second exponent");
    kernel->add_option("--t1", opt.t1, "first time");
    kernel->add_option("--t2", opt.t2, "second time");
    kernel->add_option("--window", opt.window, "series truncation (default: auto)");
    kernel->add_option("--out", opt.out, "output file (default stdout)");
    kernel->add_flag("--self-test", opt.self[3], "run module invariants instead");

    CLI::App* density = app.add_subcommand("density", "limiting density mesh (CSV)");
    density->add_option("--tau", opt.tau, "single tau");
    density->add_option("--tau-grid", opt.tau_grid, "tau grid start:stop:step");
    density->add_option("--chi", opt.chi, "single chi (>= 0)");
    density->add_option("--chi-grid", opt.chi_grid, "chi grid start:stop:step");
    density->add_option("--out", opt.out, "output file (default stdout)");
    density->add_flag("--self-test", opt.self[4], "run module invariants instead");

    CLI::App* shape = app.add_subcommand("shape", "limit surface mesh (CSV)");
    shape->add_option("--tau", opt.tau, "single tau");
    shape->add_option("--tau-grid", opt.tau_grid, "tau grid start:stop:step");
    shape->add_option("--chi", opt.chi, "single chi (>= 0)");
    shape->add_option("--chi-grid", opt.chi_grid, "chi grid start:stop:step");
    shape->add_option("--out", opt.out, "output file (default stdout)");
    shape->add_flag("--self-test", opt.self[5], "run module invariants instead");

    CLI::App* volume = app.add_subcommand("volume", "volume moment table (CSV)");
    volume->add_option("--r", opt.r, "single r = -log q (> 0)");
    volume->add_option("--r-grid", opt.r_grid, "r grid start:stop:step");
    volume->add_option("--out", opt.out, "output file (default stdout)");
    volume->add_flag("--self-test", opt.self[6], "run module invariants instead");

    CLI::App* qpqp = app.add_subcommand("qpqp-check", "pairing identity residuals");
    qpqp->add_option("--max-weight", opt.max_weight, "max |mu|, |nu| (default 3)");
    qpqp->add_option("--cutoff", opt.cutoff, "series cutoff (default 20)");
    qpqp->add_option("--x", opt.spec_x, "first one-variable specialization (|x| <= 1/2)");
    qpqp->add_option("--y", opt.spec_y, "second one-variable specialization (|y| <= 1/2)");
    qpqp->add_option("--out", opt.out, "output file (default stdout)");
    qpqp->add_flag("--self-test", opt.self[7], "run module invariants instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (macmahon->parsed()) {
            if (opt.self[0]) return self_test("macmahon");
            if (opt.max_n < 0 || opt.max_n > spp::kEnumerationCap)
                throw FlagError("--max-n must lie in 0.." + std::to_string(spp::kEnumerationCap));
            json out = spp::macmahon_coeffs(opt.max_n);
            emit(out.dump(2) + "\n", opt.out);
        } else if (corr->parsed()) {
            if (opt.self[1]) return self_test("corr");
            QValue q = parse_q(opt.q);
            spp::PointConfiguration X = parse_points(opt.points);
            if (opt.check_oracle && (opt.vmax < 1 || opt.vmax > spp::kEnumerationCap))
                throw FlagError("--vmax must lie in 1.." + std::to_string(spp::kEnumerationCap));
            spp::MqParams params;
            params.q = q.value;
            spp::CorrelationResult pf = spp::rho_pf(X, params, opt.window);
            json out;
            out["pfaffian"] = pf.value;
            out["points"] = points_json(X);
            out["q"] = q.value;
            out["window"] = static_cast<int>(pf.metadata.at("window"));
            if (opt.check_oracle) {
                spp::CorrelationResult orc = spp::rho_oracle(X, q.value, opt.vmax);
                out["oracle"] = orc.value;
                out["error_bound"] = orc.error_bound;
                out["gap"] = std::fabs(pf.value - orc.value);
                out["agrees"] = std::fabs(pf.value - orc.value) <= orc.error_bound + 1e-8;
                out["vmax"] = opt.vmax;
                if (q.exact) {
                    std::ostringstream os;
                    os << spp::rho_oracle_exact(X, *q.exact, opt.vmax);
                    out["oracle_exact"] = os.str();
                }
            }
            emit(out.dump(2) + "\n", opt.out);
        } else if (oracle->parsed()) {
            if (opt.self[2]) return self_test("oracle");
            QValue q = parse_q(opt.q);
            spp::PointConfiguration X = parse_points(opt.points);
            if (opt.vmax < 1 || opt.vmax > spp::kEnumerationCap)
                throw FlagError("--vmax must lie in 1.." + std::to_string(spp::kEnumerationCap));
            spp::CorrelationResult orc = spp::rho_oracle(X, q.value, opt.vmax);
            json out;
            out["error_bound"] = orc.error_bound;
            out["points"] = points_json(X);
            out["q"] = q.value;
            out["value"] = orc.value;
            out["vmax"] = opt.vmax;
            if (q.exact) {
                std::ostringstream os;
                os << spp::rho_oracle_exact(X, *q.exact, opt.vmax);
                out["value_exact"] = os.str();
            }
            emit(out.dump(2) + "\n", opt.out);
        } else if (kernel->parsed()) {
            if (opt.self[3]) return self_test("kernel");
            QValue q = parse_q(opt.q);
            spp::MqParams params;
            params.q = q.value;
            double v = spp::kernel_coeff(opt.x, opt.y, opt.t1, opt.t2, params, opt.window);
            int used = opt.window >= 0
                           ? opt.window
                           : spp::default_kernel_window(
                                 std::max(std::abs(opt.x), std::abs(opt.y)), q.value);
            json out;
            out["q"] = q.value;
            out["t1"] = opt.t1;
            out["t2"] = opt.t2;
            out["value"] = v;
            out["window"] = used;
            out["x"] = opt.x;
            out["y"] = opt.y;
            emit(out.dump(2) + "\n", opt.out);
        } else if (density->parsed() || shape->parsed()) {
            bool is_density = density->parsed();
            if (is_density && opt.self[4]) return self_test("density");
            if (!is_density && opt.self[5]) return self_test("shape");
            std::vector<double> taus = parse_axis(opt.tau, opt.tau_grid, "tau");
            std::vector<double> chis = parse_axis(opt.chi, opt.chi_grid, "chi");
            for (double c : chis)
                if (c < 0.0) throw FlagError("chi values must be >= 0");
            emit(is_density ? spp::density_csv(taus, chis) : spp::shape_csv(taus, chis), opt.out);
        } else if (volume->parsed()) {
            if (opt.self[6]) return self_test("volume");
            std::vector<double> rs = parse_axis(opt.r, opt.r_grid, "r");
            for (double r : rs)
                if (!(r > 0.0)) throw FlagError("r values must be > 0");
            emit(spp::volume_csv(rs), opt.out);
        } else if (qpqp->parsed()) {
            if (opt.self[7]) return self_test("qpqp-check");
            if (opt.max_weight < 0 || opt.max_weight > 12)
                throw FlagError("--max-weight must lie in 0..12");
            if (opt.cutoff < 1) throw FlagError("--cutoff must be >= 1");
            if (std::fabs(opt.spec_x) > 0.5 || std::fabs(opt.spec_y) > 0.5)
                throw FlagError("specialization values must satisfy |value| <= 1/2");
            std::vector<spp::StrictPartition> lams =
                spp::enumerate_strict_partitions(opt.max_weight);
            spp::Specialization<double> sx{opt.spec_x}, sy{opt.spec_y};
            json pairs = json::array();
            double worst = 0.0;
            for (const auto& mu : lams)
                for (const auto& nu : lams) {
                    double resid = spp::verify_qpqp(mu, nu, sx, sy, opt.cutoff);
                    worst = std::max(worst, resid);
                    json entry;
                    entry["mu"] = mu.parts;
                    entry["nu"] = nu.parts;
                    entry["residual"] = resid;
                    pairs.push_back(entry);
                }
            json out;
            out["cutoff"] = opt.cutoff;
            out["max_residual"] = worst;
            out["max_weight"] = opt.max_weight;
            out["pairs"] = pairs;
            out["x"] = opt.spec_x;
            out["y"] = opt.spec_y;
            emit(out.dump(2) + "\n", opt.out);
        }
    } catch (const FlagError& e) {
        std::cerr << "flag error: " << e.what() << "\n";
        return 2;
    } catch (const spp::error& e) {
        json err;
        err["error"]["code"] = e.code();
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"]["code"] = "invalid_argument";
        err["error"]["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
