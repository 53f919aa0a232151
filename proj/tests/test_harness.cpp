#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "symbiosim/config.hpp"
#include "symbiosim/contact.hpp"
#include "symbiosim/io.hpp"
#include "symbiosim/render.hpp"
#include "symbiosim/rng.hpp"
#include "symbiosim/sweep.hpp"

using namespace symbiosim;

TEST_CASE("config parsing, defaults, and rejection of strangers") {
  Config cfg = Config::parse_text(
      "# survival scan\n"
      "alpha = 1.25\n"
      "side=40   # inline comment\n"
      "mode = contact\n");
  CHECK(cfg.get_double("alpha", 0.0) == 1.25);
  CHECK(cfg.get_int("side", 0) == 40);
  CHECK(cfg.get_int("replicas", 7) == 7);
  CHECK(cfg.get_string("mode", "x") == "contact");
  CHECK_NOTHROW(cfg.reject_unknown());

  Config stranger = Config::parse_text("alpha = 1\nbogus_key = 2\n");
  stranger.get_double("alpha", 0.0);
  CHECK_THROWS_AS(stranger.reject_unknown(), ConfigError);

  CHECK_THROWS_AS(Config::parse_text("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("just words\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("alpha = x\n").require_double("alpha"), ConfigError);

  Config lists = Config::parse_text("p = 0.5, 0.6 ,0.7\n");
  CHECK(lists.get_double_list("p", {}) == std::vector<double>{0.5, 0.6, 0.7});

  // resolved echo covers defaults too, sorted by key
  const auto lines = cfg.resolved_lines();
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "alpha = 1.25");
  CHECK(lines[2] == "replicas = 7");
}

TEST_CASE("rng streams are deterministic and separated") {
  RngStream a(42, "tag", 7);
  RngStream b(42, "tag", 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());

  RngStream c(42, "tag", 8), d(42, "other", 7), e(43, "tag", 7);
  RngStream base(42, "tag", 7);
  int agree_c = 0, agree_d = 0, agree_e = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = base.next();
    agree_c += x == c.next();
    agree_d += x == d.next();
    agree_e += x == e.next();
  }
  CHECK(agree_c == 0);
  CHECK(agree_d == 0);
  CHECK(agree_e == 0);

  RngStream u(7, "range", 0);
  for (int i = 0; i < 20000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.below(13) < 13);
  }
}

TEST_CASE("csv formatting is stable and echoes the config") {
  CsvWriter csv({"alpha = 1.25", "seed = 7"});
  csv.set_columns({"a", "b", "c"});
  csv.field(std::int64_t{3}).field(0.125).field("x");
  csv.end_row();
  csv.field(std::int64_t{-1}).field(1.0 / 3.0).field("y");
  csv.end_row();
  CHECK(csv.str() ==
        "# alpha = 1.25\n# seed = 7\na,b,c\n3,0.125,x\n-1,0.3333333333,y\n");
}

TEST_CASE("ppm output bytes are exact") {
  Image img = make_image(2, 1);
  img.set(0, 0, 0, 0, 0);
  img.set(1, 0, 160, 160, 160);
  const char* path = "test_img.ppm";
  img.write_ppm(path);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::remove(path);
  REQUIRE(bytes.size() == 11 + 6);
  CHECK(bytes.substr(0, 11) == "P6\n2 1\n255\n");
  CHECK(static_cast<unsigned char>(bytes[11]) == 0);
  CHECK(static_cast<unsigned char>(bytes[14]) == 160);
}

TEST_CASE("snapshot geometry follows the block layout") {
  const HostGraph g = full_torus_graph(2, 8, 25);
  LatticeSpec spec{2, 8, true, 1.0, 1};
  const SiteField field = sample_sites(spec);
  ContactState state = ContactState::single_host(g, 0, 7);
  const Image img = render_contact(field, g, state);
  CHECK(img.width == 40);  // side * ceil(sqrt(25))
  CHECK(img.height == 40);
  // host 0 block: slots 0..6 black, the rest idle gray
  CHECK(img.rgb[0] == 0);                       // slot 0 at (0,0)
  const std::size_t slot7 = 3 * (1 * 40 + 2);   // slot 7 -> cell (2,1)
  CHECK(img.rgb[slot7] == 160);
  // closed sites never appear at p = 1; host 1 is empty gray
  CHECK(img.rgb[3 * 5] == 160);
}

TEST_CASE("percolation render uses the three-color scheme") {
  LatticeSpec spec{2, 6, false, 0.0, 1};
  SiteField f{spec, std::vector<std::uint8_t>(36, 0)};
  f.open[site_index(spec, {0, 0})] = 1;
  f.open[site_index(spec, {0, 1})] = 1;
  f.open[site_index(spec, {5, 5})] = 1;
  const Image img = render_percolation(label_clusters(f));
  CHECK(img.rgb[0] == 0);            // giant cluster
  CHECK(img.rgb[3 * 2] == 255);      // closed
  CHECK(img.rgb[3 * 35] == 200);     // open, non-giant
}

TEST_CASE("sweep rows are deterministic and stderr scales with replicas") {
  Config cfg = Config::parse_text(
      "mode = contact\nd = 2\nside = 10\np = 1.0\nN = 2\n"
      "alpha = 1.0\nbeta = 0.6,1.2\nt_end = 40\nreplicas = 120\ninit_hosts = 1\n");
  const std::string once = run_sweep(cfg, 999, 1);
  Config cfg2 = Config::parse_text(
      "mode = contact\nd = 2\nside = 10\np = 1.0\nN = 2\n"
      "alpha = 1.0\nbeta = 0.6,1.2\nt_end = 40\nreplicas = 120\ninit_hosts = 1\n");
  const std::string twice = run_sweep(cfg2, 999, 2);
  CHECK(once == twice);  // thread count cannot change the bytes

  // survival crosses the phase boundary as alpha + beta grows
  Config lo = Config::parse_text(
      "mode = contact\nd = 2\nside = 16\np = 1.0\nN = 5\nalpha = 0.4\nbeta = 0.4\n"
      "t_end = 300\nreplicas = 60\ninit_hosts = 1\n");
  const std::string sub = run_sweep(lo, 7, 2);
  const auto sub_row = sub.find("\n2,16,1,5,0.4,0.4,300,60,");
  REQUIRE(sub_row != std::string::npos);
  CHECK(sub.substr(sub_row + 25, 2) == "0,");

  Config hi = Config::parse_text(
      "mode = contact\nd = 2\nside = 16\np = 1.0\nN = 5\nalpha = 1.6\nbeta = 1.6\n"
      "t_end = 300\nreplicas = 60\ninit_hosts = 1\n");
  const std::string sup = run_sweep(hi, 7, 2);
  double survival = -1.0, se = -1.0;
  {
    const auto pos = sup.find("\n2,16,1,5,1.6,1.6,300,60,");
    REQUIRE(pos != std::string::npos);
    std::sscanf(sup.c_str() + pos + 25, "%lf,%lf", &survival, &se);
  }
  CHECK(survival > 0.3);
}

TEST_CASE("doubling replicas shrinks the stderr by about sqrt(2)") {
  // a mid-range survival probability keeps p(1-p) stable
  auto run_with = [&](int replicas) {
    Config cfg = Config::parse_text(
        "mode = contact\nd = 2\nside = 14\np = 1.0\nN = 1\nalpha = 0.0\nbeta = 2.6\n"
        "t_end = 150\nreplicas = " +
        std::to_string(replicas) + "\ninit_hosts = 1\n");
    const std::string csv = run_sweep(cfg, 31, 2);
    const auto end = csv.rfind('\n');
    const auto start = csv.rfind('\n', end - 1);
    const std::string row = csv.substr(start + 1, end - start - 1);
    return std::stod(row.substr(row.rfind(',') + 1));  // trailing stderr field
  };
  const double se1 = run_with(600);
  const double se2 = run_with(1200);
  const double ratio = se1 / se2;
  CHECK(ratio > std::sqrt(2.0) * 0.8);
  CHECK(ratio < std::sqrt(2.0) * 1.2);
}

TEST_CASE("central host selection is deterministic and centered") {
  const HostGraph g = full_torus_graph(2, 9, 1);
  const auto hosts = central_hosts(g, 3);
  REQUIRE(hosts.size() == 3);
  const Coord c = site_coord(g.lattice(), g.host_site(hosts[0]));
  CHECK(c[0] == 4);
  CHECK(c[1] == 4);
}
