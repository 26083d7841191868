#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "common/oracles.hpp"
#include "nleig/problems.hpp"
#include "nleig/serialization.hpp"

using namespace nleig;

namespace {

bool coeffs_close(const Polynomial& a, const Polynomial& b, double tol) {
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (std::abs(ca[i] - cb[i]) > tol * std::max(1.0, std::abs(cb[i]))) return false;
  return true;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
  const Polynomial p{1.0, 2.0, 3.0};  // 1 + 2x + 3x^2
  CHECK(p(2.0) == 17.0);
  CHECK(p.derivative() == Polynomial{2.0, 6.0});
  CHECK(p.antiderivative() == Polynomial{0.0, 1.0, 1.0, 1.0});
  CHECK((p * Polynomial{0.0, 1.0}) == Polynomial{0.0, 1.0, 2.0, 3.0});
  CHECK(Polynomial{}.degree() == -1);
  CHECK((Polynomial{1.0, 1.0} - Polynomial{1.0, 1.0}).is_zero());
}

TEST_CASE("ince_to_master closed forms") {
  // q = 2x -> V = x^2 - 1
  CHECK(ince_to_master({0.0, 2.0}).poly == Polynomial{-1.0, 0.0, 1.0});
  // q = 0 -> V = 0
  CHECK(ince_to_master({}).poly.is_zero());
  // q = x^2 -> V = x^4/4 - x, and V' = q'q/2 - q''/2 = x^3 - 1
  const PotentialSpec v = ince_to_master({0.0, 0.0, 1.0});
  CHECK(v.poly == Polynomial{0.0, -1.0, 0.0, 0.0, 0.25});
  CHECK(v.poly.derivative() == Polynomial{-1.0, 0.0, 0.0, 1.0});
}

TEST_CASE("ince_to_master derivative identity for random polynomials") {
  std::uniform_real_distribution<double> cd(-3.0, 3.0);
  std::uniform_int_distribution<int> dd(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(dd(oracles::rng()) + 1);
    for (double& v : c) v = cd(oracles::rng());
    const Polynomial q(c);
    const Polynomial lhs = ince_to_master(q).poly.derivative();
    const Polynomial rhs = 0.5 * (q.derivative() * q) - 0.5 * q.derivative().derivative();
    CAPTURE(trial);
    CHECK(coeffs_close(lhs, rhs, 1e-12));
  }
}

TEST_CASE("master_to_riccati examples") {
  const PotentialSpec x2{Polynomial{0.0, 0.0, 1.0}};
  const PotentialSpec x4{Polynomial{0.0, 0.0, 0.0, 0.0, 1.0}};
  CHECK(master_to_riccati(x2, 0.0, -1.0) == 1.0);
  CHECK(master_to_riccati(x4, 0.0, -1.06036209) == doctest::Approx(1.06036209).epsilon(1e-15));
  CHECK(master_to_riccati(x2, 2.0, 0.0) == -4.0);
}

TEST_CASE("master_to_riccati is consistent with the Riccati right side at the origin") {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const PotentialSpec V{Polynomial{d(oracles::rng()), d(oracles::rng()), 1.0}};
    const double y0 = d(oracles::rng());
    const double yp0 = d(oracles::rng());
    const double E = master_to_riccati(V, y0, yp0);
    const double rhs0 = -y0 * y0 + V(0.0) - E;
    CHECK(std::abs(rhs0 - yp0) <= 8 * std::numeric_limits<double>::epsilon() *
                                      std::max({1.0, std::abs(yp0), y0 * y0, std::abs(V(0.0))}));
  }
}

TEST_CASE("riccati_to_schrodinger ground and excited node counts") {
  const PotentialSpec x2{Polynomial{0.0, 0.0, 1.0}};
  const SchrodingerProblem ground = riccati_to_schrodinger(x2, 1.0);
  CHECK(ground.energy == 1.0);
  auto V = [&](double x) { return x * x; };
  // E = 1: psi = exp(-x^2/2), no zeros. Checked on [0, 4]: being exactly at
  // an eigenvalue, any longer window lets the integrator's own growing-mode
  // contamination overtake exp(-x^2/2) and fake a far node.
  CHECK(oracles::neumann_node_count(V, 1.0, 4.0) == 0);
  // E = 3: exactly one node on (0, inf)
  CHECK(oracles::neumann_node_count(V, 3.0, 6.0) == 1);
  // quartic: Table value is an eigenvalue, so the node count jumps across it
  auto V4 = [](double x) { return x * x * x * x; };
  CHECK(oracles::neumann_node_count(V4, 1.06036209 - 1e-4, 6.0) == 0);
  CHECK(oracles::neumann_node_count(V4, 1.06036209 + 1e-4, 6.0) == 1);
}

TEST_CASE("extended_first_integral of the cube-root equation") {
  // y'' = -(4/3) y' y^3 + x  ->  y' = -y^4/3 + x^2/2 - E
  const ExtendedEquation eq{3, {{1, 0, 1.0}}};
  const auto fi = extended_first_integral(eq);
  REQUIRE(fi.has_value());
  CHECK(fi->n == 3);
  CHECK(fi->forcing_antiderivative == Polynomial{0.0, 0.0, 0.5});
  // differentiate-and-substitute: d/dx of the first integral must reproduce
  // the second-order form, i.e. F'(x) equals the forcing for all x
  const Polynomial fprime = fi->forcing_antiderivative.derivative();
  CHECK(fprime == Polynomial{0.0, 1.0});
  // E through homogeneous initial data y(0) = 0: E = -y'(0)
  CHECK(fi->constant_for(0.0, -1.00243383) == doctest::Approx(1.00243383).epsilon(1e-15));
  // numeric consistency of the reconstruction y'' = F' - (4/3) y^3 y'
  for (double x : {0.3, 1.1, 2.4}) {
    for (double y : {-1.7, 0.4, 2.2}) {
      const double E = 0.7;
      const double v = fi->rhs(x, y, E);
      const double ypp_from_fi = fprime(x) - (4.0 / 3.0) * y * y * y * v;
      const double ypp_direct = -(4.0 / 3.0) * v * y * y * y + x;
      CHECK(ypp_from_fi == doctest::Approx(ypp_direct).epsilon(1e-14));
    }
  }
}

TEST_CASE("extended_first_integral: y-dependent forcing is not reducible") {
  const ExtendedEquation eq{3, {{1, 1, 1.0}}};
  CHECK(!extended_first_integral(eq).has_value());
}

TEST_CASE("first_integral of the master family") {
  // y'' = -2 y' y + 4x^3  ->  y' = -y^2 + x^4 - E
  const EquationSpec eq = MasterEquation{PotentialSpec{Polynomial{0.0, 0.0, 0.0, 0.0, 1.0}}};
  const auto fi = first_integral(eq);
  REQUIRE(fi.has_value());
  CHECK(fi->n == 1);
  CHECK(fi->forcing_antiderivative == Polynomial{0.0, 0.0, 0.0, 0.0, 1.0});
  CHECK(fi->constant_for(0.0, -1.0) == 1.0);
}

TEST_CASE("make_rhs evaluates every family") {
  const std::array<double, 2> state = {0.5, -1.5};
  std::array<double, 2> out{};

  const RhsEvaluator master = make_rhs(MasterEquation{PotentialSpec{Polynomial{0.0, 0.0, 1.0}}});
  CHECK(master.order == 2);
  master.eval(2.0, state, out);
  CHECK(out[0] == -1.5);
  CHECK(out[1] == doctest::Approx(-2.0 * (-1.5) * 0.5 + 2.0 * 2.0));

  std::array<double, 1> s1 = {0.5}, o1{};
  const RhsEvaluator ric = make_rhs(RiccatiEquation{PotentialSpec{Polynomial{0.0, 0.0, 1.0}}, 3.0});
  CHECK(ric.order == 1);
  ric.eval(2.0, s1, o1);
  CHECK(o1[0] == doctest::Approx(-0.25 + 4.0 - 3.0));

  const RhsEvaluator ext = make_rhs(ExtendedEquation{3, {{1, 1, 1.0}}});
  ext.eval(2.0, state, out);
  CHECK(out[1] == doctest::Approx(-(4.0 / 3.0) * (-1.5) * 0.125 + 2.0 * 0.5));

  const RhsEvaluator ince = make_rhs(InceEquation{Polynomial{0.0, 2.0}});
  ince.eval(1.0, state, out);
  // W'' = -2 W W' + q W' + q' W with q = 2x
  CHECK(out[1] == doctest::Approx(-2.0 * 0.5 * (-1.5) + 2.0 * (-1.5) + 2.0 * 0.5));
}

TEST_CASE("problem JSON round trip") {
  for (const char* text : {
           R"({"family":"master","V":[0,0,1]})",
           R"({"family":"ince","q":[0,2]})",
           R"({"family":"riccati","V":[0,0,0,0,1],"E":3.5})",
           R"({"family":"extended","n":3,"forcing":[[1,0,1.0],[2,1,-0.5]]})",
       }) {
    const EquationSpec eq = equation_from_json_text(text);
    const EquationSpec back = equation_from_json_text(equation_to_json_text(eq));
    CHECK(equation_to_json_text(eq) == equation_to_json_text(back));
  }
}

TEST_CASE("problem JSON rejects malformed documents naming the key") {
  auto thrown_message = [](const char* text) {
    try {
      equation_from_json_text(text);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(thrown_message(R"({"V":[0,0,1]})").find("family") != std::string::npos);
  CHECK(thrown_message(R"({"family":"master"})").find("V") != std::string::npos);
  CHECK(thrown_message(R"({"family":"riccati","V":[0,0,1]})").find("E") != std::string::npos);
  CHECK(thrown_message(R"({"family":"extended","n":1,"forcing":[]})").find("n") !=
        std::string::npos);
  CHECK(thrown_message(R"({"family":"extended","n":3,"forcing":[[1,0]]})").find("forcing") !=
        std::string::npos);
  CHECK(thrown_message(R"(not json)").find("JSON") != std::string::npos);
}

TEST_CASE("PotentialSpec confinement check") {
  CHECK(PotentialSpec{Polynomial{0.0, 0.0, 1.0}}.confining());
  CHECK(PotentialSpec{Polynomial{-1.0, 0.0, 0.0, 0.0, 0.25}}.confining());
  CHECK(!PotentialSpec{Polynomial{2.0}}.confining());
  CHECK(!PotentialSpec{Polynomial{0.0, 0.0, -1.0}}.confining());
  CHECK(!PotentialSpec{Polynomial{}}.confining());
}
