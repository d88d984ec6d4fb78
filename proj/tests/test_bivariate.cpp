#include <doctest.h>

#include <cmath>
#include <random>

#include "sdci/bivariate.hpp"
#include "sdci/errors.hpp"

using namespace sdci;

namespace {

Table2x3 snp1412() {
  Table2x3 t;
  t.n = {{{690, 1442, 804}, {377, 989, 555}}};
  t.id = "snp1412";
  return t;
}

}  // namespace

TEST_SUITE("bivariate") {
  TEST_CASE("log-odds effects of the reference table") {
    auto e = effects_from_table(snp1412());
    CHECK(std::fabs(e.beta_dom - 0.227354423921112) < 1e-12);
    CHECK(std::fabs(e.beta_rec - 0.00646083078965041) < 1e-12);
    CHECK(std::fabs(e.var_dom - 0.00580639887802743) < 1e-12);
    CHECK(std::fabs(e.var_rec - 0.00475018651813856) < 1e-12);
    CHECK(std::fabs(e.cov - -0.00170460362180939) < 1e-12);
    CHECK(std::fabs(e.beta_dom - 0.227) < 1e-3);
    CHECK(std::fabs(e.beta_rec - 0.006) < 1e-3);
  }

  TEST_CASE("swapping cases and controls negates the effects") {
    auto t = snp1412();
    std::swap(t.n[0], t.n[1]);
    auto a = effects_from_table(snp1412()), b = effects_from_table(t);
    CHECK(b.beta_dom == doctest::Approx(-a.beta_dom).epsilon(1e-14));
    CHECK(b.beta_rec == doctest::Approx(-a.beta_rec).epsilon(1e-12));
    CHECK(b.var_dom == doctest::Approx(a.var_dom).epsilon(1e-14));
    CHECK(b.cov == doctest::Approx(a.cov).epsilon(1e-14));
  }

  TEST_CASE("proportional rows give zero effects") {
    Table2x3 t;
    t.n = {{{100, 200, 50}, {200, 400, 100}}};
    auto e = effects_from_table(t);
    CHECK(std::fabs(e.beta_dom) < 1e-14);
    CHECK(std::fabs(e.beta_rec) < 1e-14);
    CHECK(std::fabs(cochran_armitage(t)) < 1e-12);
  }

  TEST_CASE("zero cells") {
    Table2x3 t;
    t.n = {{{10, 0, 5}, {12, 3, 4}}};
    CHECK_THROWS_AS(effects_from_table(t), InputError);
    auto e = effects_from_table(t, true);
    CHECK(std::isfinite(e.beta_dom));
    CHECK(e.var_dom == doctest::Approx(1 / 10.5 + 1 / 0.5 + 1 / 12.5 + 1 / 3.5));
  }

  TEST_CASE("principal components of the reference covariance") {
    auto e = effects_from_table(snp1412());
    auto pc = principal_components(e);
    CHECK(std::fabs(pc.var2 - 0.0034937564432590143) < 1e-13);
    CHECK(std::fabs(pc.var1 - 0.0070628289529069757) < 1e-13);
    CHECK(std::fabs(pc.pc2[0] - 0.59332339913272921) < 1e-10);
    CHECK(std::fabs(pc.pc2[1] - 0.80496418804912316) < 1e-10);
    CHECK(pc.pc1[0] == doctest::Approx(-pc.pc2[1]));
    CHECK(pc.pc1[1] == doctest::Approx(pc.pc2[0]));
    CHECK(std::fabs(pc.pc2[0] - 0.593) < 1e-3);
    CHECK(std::fabs(pc.pc2[1] - 0.805) < 1e-3);
    // eigen equations
    for (auto [v, l] : {std::pair{pc.pc1, pc.var1}, std::pair{pc.pc2, pc.var2}}) {
      CHECK(std::fabs(e.var_dom * v[0] + e.cov * v[1] - l * v[0]) < 1e-12);
      CHECK(std::fabs(e.cov * v[0] + e.var_rec * v[1] - l * v[1]) < 1e-12);
    }
  }

  TEST_CASE("principal components in degenerate orientations") {
    auto d = principal_components({0, 0, 4.0, 1.0, 0.0});
    CHECK(d.var2 == doctest::Approx(1.0));
    CHECK(std::fabs(d.pc2[0]) < 1e-12);
    CHECK(d.pc2[1] == doctest::Approx(1.0));
    auto iso = principal_components({0, 0, 1.0, 1.0, 0.0});
    CHECK(iso.pc2[0] >= 0.0);
    CHECK(iso.pc2[1] >= 0.0);
    CHECK(iso.pc2[0] * iso.pc2[0] + iso.pc2[1] * iso.pc2[1] == doctest::Approx(1.0));
    auto neg = principal_components({0, 0, 2.0, 3.0, -0.7});
    CHECK(neg.pc2[0] >= 0.0);
    CHECK(neg.pc2[1] >= 0.0);
  }

  TEST_CASE("pc2 score") {
    auto e = effects_from_table(snp1412());
    CHECK(std::fabs(z_pc2(e) - 2.37016006963144) < 1e-9);
    auto pc = principal_components(e);
    auto z0 = e;
    z0.beta_dom = 0.0;
    z0.beta_rec = 0.0;
    CHECK(z_pc2(z0) == 0.0);
    auto orth = e;
    orth.beta_dom = 0.3 * pc.pc1[0];
    orth.beta_rec = 0.3 * pc.pc1[1];
    CHECK(std::fabs(z_pc2(orth)) < 1e-12);
  }

  TEST_CASE("trend statistic") {
    auto t = snp1412();
    CHECK(std::fabs(cochran_armitage(t) - 2.60502387008638) < 1e-9);
    CHECK(std::fabs(cochran_armitage(t) - 2.605) < 5e-3);
    CHECK(std::fabs(cochran_armitage(t, {0, 1, 1}) - 3.19026269757907) < 1e-9);
    auto s = t;
    std::swap(s.n[0], s.n[1]);
    CHECK(cochran_armitage(s) == doctest::Approx(-cochran_armitage(t)));
    Table2x3 mono;
    mono.n = {{{0, 10, 0}, {0, 20, 0}}};
    CHECK_THROWS_AS(cochran_armitage(mono), InputError);
  }

  TEST_CASE("rectangle level and shape") {
    auto e = effects_from_table(snp1412());
    auto r = rect_region(e, 0.0104, 0.04, MarginalFamily::symmetric(), 0.04);
    CHECK(std::fabs(r.joint_level() - (1 - 0.04) * (1 - 0.0104)) < 1e-15);
    CHECK(std::fabs(r.joint_level() - 0.950) < 5e-4);
    CHECK(r.contains(e.beta_dom, e.beta_rec));
    for (auto& c : r.corners()) {
      CHECK(std::isfinite(c[0]));
      // corners project onto interval ends
      const double s1 = c[0] * r.pc1[0] + c[1] * r.pc1[1], s2 = c[0] * r.pc2[0] + c[1] * r.pc2[1];
      CHECK((std::fabs(s1 - r.pc1_interval.lower) < 1e-12 || std::fabs(s1 - r.pc1_interval.upper) < 1e-12));
      CHECK((std::fabs(s2 - r.pc2_interval.lower) < 1e-12 || std::fabs(s2 - r.pc2_interval.upper) < 1e-12));
    }
    const double mid1 = 0.5 * (r.pc1_interval.lower + r.pc1_interval.upper);
    const double out2 = r.pc2_interval.upper + 1e-6;
    CHECK_FALSE(r.contains(mid1 * r.pc1[0] + out2 * r.pc2[0], mid1 * r.pc1[1] + out2 * r.pc2[1]));
    auto open1 = rect_region(e, 1.0, 0.04, MarginalFamily::symmetric(), 0.04);
    CHECK(open1.joint_level() == doctest::Approx(0.96));
    CHECK(open1.pc1_interval == Interval::whole());
    CHECK(open1.contains(e.beta_dom + 50 * open1.pc1[0], e.beta_rec + 50 * open1.pc1[1]));
    CHECK(std::isnan(open1.corners()[0][0]));
    CHECK_THROWS_AS(rect_region(e, 0.0, 0.04, MarginalFamily::symmetric(), 0.04), DomainError);
  }

  TEST_CASE("flipping the pc1 axis does not change membership") {
    auto e = effects_from_table(snp1412());
    auto r = rect_region(e, 0.0104, 0.04, MarginalFamily::symmetric(), 0.04);
    auto f = r;
    f.pc1 = {-r.pc1[0], -r.pc1[1]};
    f.pc1_interval = r.pc1_interval.reflected();
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 0.15);
    for (int k = 0; k < 2000; ++k) {
      double a = e.beta_dom + n(rng), b = e.beta_rec + n(rng);
      CHECK(r.contains(a, b) == f.contains(a, b));
    }
  }

  TEST_CASE("rect selection on the reference table") {
    auto e = effects_from_table(snp1412());
    auto s = rect_sdci(std::vector<BivariateEffect>{e}, 0.0104, 0.04, MarginalFamily::symmetric());
    REQUIRE(s.size() == 1);
    CHECK(s[0].selected);
    CHECK(s[0].decision == SignDecision::Positive);
    CHECK(s[0].z == doctest::Approx(z_pc2(e)));
    CHECK(s[0].region.joint_level() == doctest::Approx(0.950016));
  }

  TEST_CASE("null tables are rarely selected") {
    std::mt19937_64 rng(21);
    std::discrete_distribution<int> geno({0.36, 0.48, 0.16});
    std::vector<Table2x3> tables(300);
    for (auto& t : tables) {
      for (int row = 0; row < 2; ++row)
        for (int k = 0; k < 2000; ++k) t.n[row][geno(rng)] += 1;
    }
    auto s = rect_sdci(tables, 0.01, 0.05, MarginalFamily::symmetric());
    std::size_t n = 0;
    for (auto& x : s) n += x.selected;
    CHECK(n <= 3);
    for (auto& x : s)
      if (!x.selected) CHECK(x.region.adjusted_alpha2 == doctest::Approx(0.05));
  }
}
