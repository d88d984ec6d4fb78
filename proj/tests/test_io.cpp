#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sdci/errors.hpp"
#include "sdci/io.hpp"

using namespace sdci;

TEST_SUITE("io") {
  TEST_CASE("number formatting round trips") {
    for (double v : {0.1, -2.5, 1.0 / 3.0, 1e-300, 6.02e23, 0.0, 1.9599639845400542}) {
      CHECK(parse_double(format_double(v), "x", 1) == v);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(kInf) == "inf");
    CHECK(format_double(-kInf) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(parse_double("-inf", "x", 1) == -kInf);
    CHECK(std::isnan(parse_double("nan", "x", 1)));
    CHECK_THROWS_AS(parse_double("1.2.3", "x", 1), ParseError);
    CHECK_THROWS_AS(parse_double("", "x", 1), ParseError);
  }

  TEST_CASE("csv splitting") {
    CHECK(split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split_csv_line(" a , 1.5 ") == std::vector<std::string>{"a", "1.5"});
  }

  TEST_CASE("reading units") {
    std::istringstream in("# comment\nid,estimate,sd\n\nu1,3.0,1\nu2,-0.5,2\n");
    auto u = read_units_csv(in);
    REQUIRE(u.size() == 2);
    CHECK(u[1].id == "u2");
    CHECK(u[1].estimate == -0.5);
    CHECK(u[1].sd == 2.0);
    std::istringstream in2("id,estimate\nu1,3.0\n");
    CHECK(read_units_csv(in2)[0].sd == 1.0);
  }

  TEST_CASE("unit parse errors carry the line number") {
    std::istringstream bad("id,estimate\nu1,3.0\nu2,abc\n");
    try {
      read_units_csv(bad);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream hdr("name,value\nu1,3\n");
    CHECK_THROWS_AS(read_units_csv(hdr), ParseError);
    std::istringstream cols("id,estimate\nu1,3,4\n");
    CHECK_THROWS_AS(read_units_csv(cols), ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_units_csv(empty), ParseError);
  }

  TEST_CASE("selection csv round trip") {
    std::vector<Unit> u{{"u1", 3.0, 1.0}, {"u2", 0.5, 1.0}, {"u3", -2.5, 1.0}};
    auto r = sdci::sdci(u, {0.1, MarginalFamily::mqc(0.85), DependencyMode::Independent});
    std::ostringstream out;
    write_selection_csv(out, r, "manifest sdci q=0.1");
    CHECK(out.str().rfind("# manifest sdci q=0.1\n", 0) == 0);
    std::istringstream in(out.str());
    auto back = read_selection_csv(in);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back[i].id == r.units[i].id);
      CHECK(back[i].selected == r.units[i].selected);
      CHECK(back[i].decision == r.units[i].decision);
      CHECK(back[i].interval == r.units[i].interval);
      CHECK(back[i].adjusted_alpha == r.units[i].adjusted_alpha);
    }
  }

  TEST_CASE("gwas tables") {
    std::istringstream in("id,n10,n11,n12,n20,n21,n22\nsnp1412,690,1442,804,377,989,555\n");
    auto t = read_gwas_csv(in);
    REQUIRE(t.size() == 1);
    CHECK(t[0].n[0][1] == 1442);
    CHECK(t[0].n[1][2] == 555);
    std::istringstream bad("id,n10,n11,n12,n20,n21,n22\nx,1,2,3\n");
    CHECK_THROWS_AS(read_gwas_csv(bad), ParseError);
  }

  TEST_CASE("simulation configs") {
    std::istringstream in("# sim\nm = 200\ntheta_model = exp-normal-mix\nq = 0.2\nfamily = mqc\npsi = 0.85\nreps = 50\n");
    auto c = parse_sim_config(in);
    CHECK(c.m == 200);
    CHECK(c.theta.kind == ThetaModelKind::ExpNormalMix);
    CHECK(c.procedure.family.psi == 0.85);
    CHECK(c.n_reps == 50);
    auto echo = sim_config_echo(c);
    CHECK(echo.at("family") == "mqc");
    CHECK(echo.at("q") == "0.2");
    auto again = sim_config_from_key_values(echo);
    CHECK(sim_config_echo(again) == echo);

    std::istringstream unknown("m = 3\ncolour = red\n");
    CHECK_THROWS_AS(parse_sim_config(unknown), ConfigError);
    std::istringstream psi("family = symmetric\npsi = 0.9\n");
    CHECK_THROWS_AS(parse_sim_config(psi), ConfigError);
    std::istringstream nodelta("family = pratt\ndelta = 0.5\n");
    CHECK_THROWS_AS(parse_sim_config(nodelta), ConfigError);
    std::istringstream noeq("m 300\n");
    CHECK_THROWS_AS(parse_sim_config(noeq), ParseError);
    std::istringstream dims("noise = smoothed-field\ndims = 10x10\n");
    CHECK_THROWS(parse_sim_config(dims));
  }

  TEST_CASE("bundled configs parse") {
    for (const char* name : {"sim1.cfg", "sim2.cfg", "sim2_qc.cfg", "dependency.cfg"}) {
      std::ifstream f(std::string(SDCI_SOURCE_DIR) + "/configs/" + name);
      REQUIRE(f.good());
      CHECK_NOTHROW(parse_sim_config(f).validate());
    }
  }
}
