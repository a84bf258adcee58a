// command line front end: every module behind one binary with JSON/CSV output
#include <CLI11.hpp>
#include <json.hpp>

#include <markov/boundary.hpp>
#include <markov/green.hpp>
#include <markov/mcg.hpp>
#include <markov/periodic.hpp>
#include <markov/toruscover.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace markov;

namespace {

constexpr int kExitOk = 0, kExitInput = 2, kExitNumeric = 3, kExitBudget = 4;

std::vector<Rational> parse_rationals(const std::string& s, std::size_t count,
                                      const char* what) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    if (out.size() != count)
        throw CLI::ValidationError(std::string(what) + ": expected " + std::to_string(count) +
                                   " comma-separated rationals");
    return out;
}

RationalPoint parse_point(const std::string& s, const Rational& D) {
    auto v = parse_rationals(s, 3, "--point");
    return RationalPoint{v[0], v[1], v[2], D};
}

Place parse_place(const std::string& s) {
    if (s.empty() || s == "arch" || s == "inf") return Place::arch();
    return Place::finite(Int(s));
}

std::string qstr(const QuadraticReal& q) {
    std::ostringstream os;
    os << q.rational_part();
    if (!q.is_rational()) os << " + " << q.radical_part() << "*sqrt(" << q.radicand() << ")";
    return os.str();
}

json divisor_json(const CyclicCompletion& X, const DivisorAtInfinity& d) {
    json out = json::array();
    for (const auto& [v, c] : d.coeff)
        out.push_back({{"vertex", v.str()}, {"exact", qstr(c)}, {"float", c.to_double()}});
    return out;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(out_path);
        f << text;
    }
}

std::string label_str(PeriodicLabel l) {
    switch (l) {
        case PeriodicLabel::Saddle: return "saddle";
        case PeriodicLabel::NonSaddle: return "non-saddle";
        default: return "unclassified";
    }
}

json point_json(const CertifiedPeriodicPoint& c) {
    return {{"approx", {c.approx.x, c.approx.y, c.approx.z}},
            {"period", c.period},
            {"box_width",
             std::max({c.bx.width().convert_to<double>(), c.by.width().convert_to<double>(),
                       c.bz.width().convert_to<double>()})},
            {"eigenvalues",
             {{c.eig1.re, c.eig1.im}, {c.eig2.re, c.eig2.im}}},
            {"label", label_str(c.label)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamics of loxodromic automorphisms of Markov surfaces"};
    app.require_subcommand(1);

    std::string word_s, word2_s, d_s = "0", point_s, place_s = "arch", out_path,
                format = "json", matrix_s = "2,1,1,1";
    double tol = 1e-6;
    unsigned nmax = 1;
    long budget = 64;
    int kmax = 10;
    std::uint64_t seed = 0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", out_path, "output file (default stdout)");
        c->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* c_degree = app.add_subcommand("degree", "dynamical degree and boundary fixed points");
    c_degree->add_option("--word", word_s)->required();
    add_common(c_degree);

    auto* c_classify = app.add_subcommand("classify", "elliptic/parabolic/loxodromic");
    c_classify->add_option("--word", word_s)->required();
    add_common(c_classify);

    auto* c_orbit = app.add_subcommand("orbit", "iterate a rational point");
    c_orbit->add_option("--word", word_s)->required();
    c_orbit->add_option("--point", point_s)->required();
    c_orbit->add_option("--D", d_s);
    c_orbit->add_option("--nmax", nmax)->required();
    add_common(c_orbit);

    auto* c_green = app.add_subcommand("green", "local Green function estimate");
    c_green->add_option("--word", word_s)->required();
    c_green->add_option("--point", point_s)->required();
    c_green->add_option("--D", d_s);
    c_green->add_option("--place", place_s, "arch or a prime");
    c_green->add_option("--tol", tol);
    add_common(c_green);

    auto* c_height = app.add_subcommand("height", "canonical height over all places");
    c_height->add_option("--word", word_s)->required();
    c_height->add_option("--point", point_s)->required();
    c_height->add_option("--D", d_s);
    c_height->add_option("--tol", tol);
    add_common(c_height);

    auto* c_per = app.add_subcommand("periodic", "certified periodic points");
    c_per->add_option("--word", word_s)->required();
    c_per->add_option("--D", d_s);
    c_per->add_option("--nmax", nmax, "period");
    c_per->add_option("--tol", tol);
    add_common(c_per);

    auto* c_cmp = app.add_subcommand("compare-per", "compare periodic sets of two words");
    c_cmp->add_option("--word", word_s)->required();
    c_cmp->add_option("--word2", word2_s)->required();
    c_cmp->add_option("--D", d_s);
    c_cmp->add_option("--nmax", nmax, "max period");
    c_cmp->add_option("--tol", tol);
    add_common(c_cmp);

    auto* c_torus = app.add_subcommand("torus", "eta image of a root-of-unity torus point");
    c_torus->add_option("--point", point_s, "exponents a,b of (e^2pi i a, e^2pi i b)")
        ->required();
    c_torus->add_option("--word", word_s, "also check exact equivariance");
    add_common(c_torus);

    auto* c_eq = app.add_subcommand("equidist", "exact character averages at D=4");
    c_eq->add_option("--matrix", matrix_s, "monomial matrix a,b,c,d");
    c_eq->add_option("--nmax", nmax, "period")->required();
    c_eq->add_option("--kmax", kmax, "character range |k| <= kmax");
    c_eq->add_option("--seed", seed)->configurable(false);
    add_common(c_eq);

    auto* c_div = app.add_subcommand("divisor", "adapted completion, pullback, theta+, D-");
    c_div->add_option("--word", word_s)->required();
    c_div->add_option("--budget", budget, "blow-up budget");
    add_common(c_div);

    auto* c_esc = app.add_subcommand("escape-experiment", "orbits of saddles under another word");
    c_esc->add_option("--word", word_s)->required();
    c_esc->add_option("--word2", word2_s)->required();
    c_esc->add_option("--D", d_s);
    c_esc->add_option("--budget", budget, "iteration budget");
    add_common(c_esc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    have_seed = c_eq->count("--seed") > 0;

    try {
        Rational D = parse_rational(d_s);
        json j;

        if (*c_degree) {
            Word w = Word::parse(word_s);
            WordClass cls = classify(w);
            j["word"] = w.str();
            j["class"] = cls == WordClass::Elliptic     ? "elliptic"
                         : cls == WordClass::Parabolic ? "parabolic"
                                                       : "loxodromic";
            DynamicalDegree dd = dynamical_degree(w);
            j["lambda1"] = {{"exact", qstr(dd.lambda1)},
                            {"float", dd.lambda1_double()},
                            {"trace", dd.trace.str()},
                            {"det", dd.det.str()}};
            j["entropy"] = dd.entropy();
            if (cls == WordClass::Loxodromic) {
                auto fix = boundary_fixed_points(w);
                j["alpha"] = {{"exact", qstr(fix.alpha)}, {"float", fix.alpha.to_double()}};
                j["omega"] = {{"exact", qstr(fix.omega)}, {"float", fix.omega.to_double()}};
            }
            emit(out_path, j.dump(2));
        } else if (*c_classify) {
            Word w = Word::parse(word_s);
            WordClass cls = classify(w);
            j["word"] = w.str();
            j["class"] = cls == WordClass::Elliptic     ? "elliptic"
                         : cls == WordClass::Parabolic ? "parabolic"
                                                       : "loxodromic";
            emit(out_path, j.dump(2));
        } else if (*c_orbit) {
            Word w = Word::parse(word_s);
            RationalPoint p = parse_point(point_s, D);
            auto traj = orbit(w, p, nmax);
            if (format == "csv") {
                std::ostringstream os;
                os << "n,x,y,z\n";
                for (std::size_t i = 0; i < traj.points.size(); ++i)
                    os << i << "," << traj.points[i].x << "," << traj.points[i].y << ","
                       << traj.points[i].z << "\n";
                emit(out_path, os.str());
            } else {
                j["word"] = w.str();
                j["D"] = d_s;
                j["escaped"] = traj.escaped;
                if (traj.escape_index) j["escape_index"] = *traj.escape_index;
                json pts = json::array();
                for (const auto& q : traj.points)
                    pts.push_back({q.x.str(), q.y.str(), q.z.str()});
                j["points"] = pts;
                emit(out_path, j.dump(2));
            }
        } else if (*c_green) {
            Word w = Word::parse(word_s);
            RationalPoint p = parse_point(point_s, D);
            GreenEstimate g = green_plus(w, p, parse_place(place_s), tol);
            j["word"] = w.str();
            j["place"] = parse_place(place_s).str();
            j["value"] = g.value.convert_to<double>();
            j["n_used"] = g.n_used;
            j["cauchy_gap"] = g.cauchy_gap.convert_to<double>();
            j["certified_positive"] = g.certified_positive;
            emit(out_path, j.dump(2));
        } else if (*c_height) {
            Word w = Word::parse(word_s);
            RationalPoint p = parse_point(point_s, D);
            HeightEstimate h = height(w, p, tol);
            j["word"] = w.str();
            j["value"] = h.value.convert_to<double>();
            json per = json::array();
            for (const auto& c : h.per_place)
                per.push_back({{"place", c.place.str()},
                               {"g_plus", c.g_plus.convert_to<double>()},
                               {"g_minus", c.g_minus.convert_to<double>()}});
            j["per_place"] = per;
            emit(out_path, j.dump(2));
        } else if (*c_per) {
            Word w = Word::parse(word_s);
            auto pts = find_periodic(w, D, nmax, {}, 48, tol);
            if (format == "csv") {
                std::ostringstream os;
                os << "x,y,z,period,box_width,label\n";
                for (const auto& c : pts)
                    os << c.approx.x << "," << c.approx.y << "," << c.approx.z << ","
                       << c.period << ","
                       << std::max({c.bx.width().convert_to<double>(),
                                    c.by.width().convert_to<double>(),
                                    c.bz.width().convert_to<double>()})
                       << "," << label_str(c.label) << "\n";
                emit(out_path, os.str());
            } else {
                j["word"] = w.str();
                j["D"] = d_s;
                j["period"] = nmax;
                j["count"] = pts.size();
                json arr = json::array();
                for (const auto& c : pts) arr.push_back(point_json(c));
                j["points"] = arr;
                emit(out_path, j.dump(2));
            }
        } else if (*c_cmp) {
            Word f = Word::parse(word_s), g = Word::parse(word2_s);
            auto rep = compare_periodic_sets(f, g, D, nmax, tol);
            j["f"] = f.str();
            j["g"] = g.str();
            j["D"] = d_s;
            j["n_max"] = nmax;
            auto dump = [&](const std::vector<CertifiedPeriodicPoint>& v) {
                json arr = json::array();
                for (const auto& c : v) arr.push_back(point_json(c));
                return arr;
            };
            j["common"] = dump(rep.common);
            j["only_f"] = dump(rep.only_f);
            j["only_g"] = dump(rep.only_g);
            emit(out_path, j.dump(2));
        } else if (*c_torus) {
            auto v = parse_rationals(point_s, 2, "--point");
            TorusExponents t{v[0], v[1]};
            auto enc = eta_enclosure(t, 40);
            j["exponents"] = {v[0].str(), v[1].str()};
            j["eta"] = {enc[0].mid(), enc[1].mid(), enc[2].mid()};
            if (!word_s.empty()) {
                Word w = Word::parse(word_s);
                j["word"] = w.str();
                j["equivariant"] = equivariance_exact(w, t);
            }
            emit(out_path, j.dump(2));
        } else if (*c_eq) {
            auto mv = parse_rationals(matrix_s, 4, "--matrix");
            for (const auto& q : mv)
                if (denominator(q) != 1)
                    throw CLI::ValidationError("--matrix: entries must be integers");
            Mat2 M{numerator(mv[0]), numerator(mv[1]), numerator(mv[2]), numerator(mv[3])};
            std::vector<std::pair<int, int>> ks;
            for (int k1 = -kmax; k1 <= kmax; ++k1)
                for (int k2 = -kmax; k2 <= kmax; ++k2) ks.push_back({k1, k2});
            auto avgs = equidistribution_test(M, nmax, ks);
            std::ostringstream os;
            os << "# generator: none (exact computation)";
            if (have_seed) os << ", seed=" << seed;
            os << "\nk1,k2,average\n";
            for (const auto& a : avgs) os << a.k1 << "," << a.k2 << "," << (a.average_one ? 1 : 0) << "\n";
            emit(out_path, os.str());
        } else if (*c_div) {
            Word w = Word::parse(word_s);
            auto ad = adapted_completion(w, static_cast<unsigned>(budget), 4);
            auto P = pullback_matrix(w, ad.X);
            if (format == "csv") {
                std::ostringstream os;
                for (const auto& row : P.m) {
                    for (std::size_t c = 0; c < row.size(); ++c)
                        os << (c ? "," : "") << row[c];
                    os << "\n";
                }
                emit(out_path, os.str());
            } else {
                j["word"] = w.str();
                json verts = json::array();
                for (const auto& v : ad.X.vertices()) verts.push_back(v.str());
                j["vertices"] = verts;
                j["intersection"] = json::array();
                for (const auto& row : ad.X.intersection()) {
                    json r = json::array();
                    for (const auto& e : row) r.push_back(e.str());
                    j["intersection"].push_back(r);
                }
                j["corner_plus"] = ad.corner_plus;
                j["corner_minus"] = ad.corner_minus;
                j["contracting_power"] = ad.contracting_power;
                j["pullback"] = json::array();
                for (const auto& row : P.m) {
                    json r = json::array();
                    for (const auto& e : row) r.push_back(e.str());
                    j["pullback"].push_back(r);
                }
                j["lambda1"] = dynamical_degree(w).lambda1_double();
                j["theta_plus"] = divisor_json(ad.X, theta_plus(w, ad.X));
                unsigned N = ad.contracting_power;
                if (word_to_matrix(w).det() == -1 && N % 2 == 1) ++N;
                Word g = w.power(static_cast<long>(N));
                j["d_minus"] = {{"power", N}, {"coeff", divisor_json(ad.X, d_minus(g, ad.X))}};
                emit(out_path, j.dump(2));
            }
        } else if (*c_esc) {
            Word f = Word::parse(word_s), g = Word::parse(word2_s);
            auto rep = unbounded_orbit_experiment(f, g, D, static_cast<unsigned>(budget));
            j["f"] = f.str();
            j["g"] = g.str();
            j["D"] = d_s;
            j["budget"] = budget;
            json arr = json::array();
            for (const auto& v : rep.verdicts)
                arr.push_back({{"start", {v.start.x, v.start.y, v.start.z}},
                               {"verdict", v.verdict},
                               {"step", v.step}});
            j["verdicts"] = arr;
            emit(out_path, j.dump(2));
        }
        return kExitOk;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DegenerateMatrix& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotLoxodromic& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
