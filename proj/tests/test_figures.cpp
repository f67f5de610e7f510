#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "optosqueeze/error.hpp"
#include "optosqueeze/figures.hpp"
#include "optosqueeze/linres.hpp"
#include "optosqueeze/oracle.hpp"

using namespace optosqueeze;
namespace fig = optosqueeze::figures;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const {
    return std::stod(rows[row][col(name)]);
  }
};

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table parse(const std::string& csv) {
  Table t;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty()) t.header = cells(line);
    else t.rows.push_back(cells(line));
  }
  return t;
}

const fig::FigureFile& file(const std::vector<fig::FigureFile>& files, const std::string& name) {
  for (const auto& f : files)
    if (f.name == name) return f;
  FAIL("missing file " << name);
  return files.front();
}

}  // namespace

TEST_CASE("resonance spectra") {
  const auto files = fig::fig2a();
  REQUIRE(files.size() == 2);
  const Table diss = parse(file(files, "fig2a_dissipative.csv").csv);
  REQUIRE(diss.rows.size() == 303);
  double best = 1.0;
  double at = 1.0;
  for (std::size_t i = 0; i < diss.rows.size(); ++i) {
    const double s = diss.num(i, "s_u1");
    if (s < best) {
      best = s;
      at = diss.num(i, "omega");
    }
  }
  CHECK(at == 0.0);
  CHECK(best / kShotNoise == doctest::Approx(5.25e-5).epsilon(1e-3));

  const Table ps = parse(file(files, "fig2a_ponderomotive.csv").csv);
  for (std::size_t i = 0; i < ps.rows.size(); ++i)
    CHECK(ps.num(i, "s_u1") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sideband spectra squeeze the ponderomotive output near Omega") {
  const auto files = fig::fig2b();
  const Table ps = parse(file(files, "fig2b_ponderomotive.csv").csv);
  REQUIRE(ps.rows.size() == 1001);
  double best = 1.0;
  for (std::size_t i = 0; i < ps.rows.size(); ++i) best = std::min(best, ps.num(i, "s_opt"));
  CHECK(best < kShotNoise);
}

TEST_CASE("dissipative squeezing angle is constant") {
  const auto files = fig::fig2c();
  const Table diss = parse(file(files, "fig2c_dissipative.csv").csv);
  REQUIRE(diss.rows.size() > 1000);
  // Constant up to rounding in the cross spectrum.
  for (std::size_t i = 0; i < diss.rows.size(); ++i) CHECK(std::abs(diss.num(i, "phi_opt")) < 1e-10);
}

TEST_CASE("strong-coupling spectrum has two minima at +-omega_+") {
  const auto files = fig::fig5();
  REQUIRE(files.size() == 1);
  CHECK(files[0].csv.rfind("# kappa=1 gamma_m=0.1 n_th=10 r=", 0) == 0);
  const Table t = parse(files[0].csv);
  REQUIRE(t.rows.size() == 1201);
  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < t.rows.size(); ++i) {
    const double s = t.num(i, "s_u1");
    if (s < t.num(i - 1, "s_u1") && s < t.num(i + 1, "s_u1")) minima.push_back(t.num(i, "omega"));
  }
  REQUIRE(minima.size() == 2);
  const double expected = std::sqrt(8.0 * 0.25 - 1.0 - 0.01) / std::sqrt(2.0);
  const double step = 3.0 / 1200.0;
  CHECK(std::abs((minima[1] - minima[0]) - expected) <= 2.0 * step);
  CHECK(minima[0] == doctest::Approx(-minima[1]));
  const PhysParams p = fig::strong_coupling_params();
  CHECK(2.0 * oracle::strong_coupling(p, 0.5).omega_plus == doctest::Approx(expected));
}

TEST_CASE("squeezing versus cooperativity") {
  const Table t = parse(fig::fig3()[0].csv);
  REQUIRE(t.rows.size() == 71);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double c = t.num(i, "cooperativity");
    CHECK(t.num(i, "diss_rwa") == doctest::Approx(21.0 * oracle::matched_exp_minus_2r(c)).epsilon(1e-9));
    CHECK(t.num(i, "diss_floquet") >= t.num(i, "diss_rwa") * (1.0 - 1e-9));
    CHECK(t.num(i, "ps_resonance") <= 1.0 + 1e-12);
    CHECK(std::abs(t.num(i, "ps_sideband_omega") - 10.0) <= 20.0 * 2e-5 * (1.0 + 1e-9));
  }
  CHECK(t.num(70, "diss_floquet") ==
        doctest::Approx(oracle::bad_cavity_floor(1.0, 10.0).value + t.num(70, "diss_rwa")).epsilon(1e-2));
}

TEST_CASE("measurement map crosses the caption contours") {
  const Table t = parse(fig::fig4()[0].csv);
  REQUIRE(t.rows.size() == 33 * 25);
  double lo = 1e300, hi = 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i][t.col("status")] != "ok") continue;
    ++ok;
    const double e = t.num(i, "enhancement");
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  CHECK(ok > t.rows.size() * 9 / 10);
  for (double level : {1.0, 10.0, 100.0, 1000.0}) {
    CHECK(lo < level);
    CHECK(hi > level);
  }
}

TEST_CASE("figure dispatch") {
  CHECK_THROWS_AS(fig::figure("7"), ValidationError);
  CHECK(fig::figure("5").size() == 1);
}
