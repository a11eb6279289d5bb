#include "doctest.h"

#include "overconv/eigendata.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

using namespace ovc;

TEST_CASE("point counts for 11a1") {
  EigenData f = point_count_eigendata({0, -1, 1, -10, -20}, 50, "11a1");
  CHECK(f.level == 11);
  CHECK(f.k == 0);
  CHECK(f.a(2) == Rat(-2));
  CHECK(f.a(3) == Rat(-1));
  CHECK(f.a(5) == Rat(1));
  CHECK(f.a(7) == Rat(-2));
  CHECK(f.a(11) == Rat(1));  // split multiplicative
  CHECK(f.a(13) == Rat(4));
}

TEST_CASE("hasse bound at ell = 2") {
  EigenData f = point_count_eigendata({0, 0, 1, -1, 0}, 10, "37a1");
  Rat a2 = f.a(2);
  CHECK(a2 <= Rat(2));
  CHECK(a2 >= Rat(-2));
  CHECK(f.level == 37);
}

TEST_CASE("delta tau values") {
  EigenData d = delta_eigendata(20);
  CHECK(d.k == 10);
  CHECK(d.a(2) == Rat(-24));
  CHECK(d.a(3) == Rat(252));
  CHECK(d.a(5) == Rat(4830));
  CHECK(d.a(7) == Rat(-16744));
  CHECK(d.a(11) == Rat(534612));
  CHECK(d.a(13) == Rat(-577738));
}

TEST_CASE("twist by fundamental discriminants") {
  EigenData f = builtin_eigendata("11a1", 30);
  CHECK_THROWS_AS(twist(f, -11), std::domain_error);
  EigenData g = twist(f, -4);
  CHECK(g.level == 11 * 16);
  // chi_{-4}(3) = -1, so a_3 flips sign
  CHECK(g.a(3) == Rat(1));
  CHECK(g.a(5) == Rat(1));   // chi_{-4}(5) = 1
  CHECK(g.a(7) == Rat(2));   // chi_{-4}(7) = -1
  // double twist restores a_ell away from D
  EigenData gg = twist(g, -4);
  for (long ell : {3L, 5L, 7L, 13L}) CHECK(gg.a(ell) == f.a(ell));
  // identity twist
  EigenData id = twist(f, 1);
  CHECK(id.a(3) == f.a(3));
}

TEST_CASE("stabilize: refinements and slopes") {
  EigenData f = builtin_eigendata("11a1", 30);
  // p = 3: slopes {0, 1} from X^2 + X + 3
  auto refs3 = stabilize(f, 3, 10);
  REQUIRE(refs3.size() == 2);
  CHECK(refs3[0].slope == Rat(0));
  CHECK(refs3[1].slope == Rat(1));
  CHECK(refs3[0].refined_level == 33);
  // alpha + beta = a_3 = -1, alpha * beta = 3
  PadicNum s = refs3[0].alpha + refs3[1].alpha;
  CHECK((s + PadicNum::exact_int(3, 1)).is_zero());
  PadicNum pr = refs3[0].alpha * refs3[1].alpha;
  CHECK((pr - PadicNum::exact_int(3, 3)).is_zero());

  // p = 7: 7 coprime to 11, a_7 = -2 a unit
  auto refs7 = stabilize(f, 7, 8);
  CHECK(refs7[0].slope == Rat(0));
  CHECK(refs7[1].slope == Rat(1));

  // p = 11 divides the level: single refinement alpha = a_11 = 1
  auto refs11 = stabilize(f, 11, 8);
  REQUIRE(refs11.size() == 1);
  CHECK(refs11[0].p_divides_level);
  CHECK(refs11[0].refined_level == 11);
  CHECK((refs11[0].alpha - PadicNum::exact_int(11, 1)).is_zero());
  CHECK(refs11[0].slope == Rat(0));

  // Delta at p = 11: slopes {0, 11}
  EigenData d = delta_eigendata(12);
  auto refsd = stabilize(d, 11, 6);
  REQUIRE(refsd.size() == 2);
  CHECK(refsd[0].slope == Rat(0));
  CHECK(refsd[1].slope == Rat(11));
}

TEST_CASE("alpha beta product identity across refinements") {
  EigenData f = builtin_eigendata("11a1", 30);
  for (long p : {3L, 5L, 7L, 13L}) {
    auto refs = stabilize(f, p, 8);
    REQUIRE(refs.size() == 2);
    PadicNum prod = refs[0].alpha * refs[1].alpha;
    PadicNum sum = refs[0].alpha + refs[1].alpha;
    CHECK((prod - PadicNum(p, pow_int(p, f.k + 1), PadicNum::PREC_EXACT)).is_zero());
    CHECK((sum - PadicNum(p, f.a(p), 8)).is_zero());
  }
}

TEST_CASE("lmfdb fetch against a local server, then cache replay") {
  namespace fs = std::filesystem;
  std::string cache = "/tmp/ovc_test_cache_" + std::to_string(::getpid());
  fs::remove_all(cache);
  setenv("OVERCONV_CACHE", cache.c_str(), 1);

  // serve a canned LMFDB-style response
  httplib::Server srv;
  srv.Get("/api/mf_newforms/", [](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json rec = {
        {"label", "11.2.a.a"}, {"level", 11}, {"weight", 2}, {"char", 1},
        {"an", {{"2", -2}, {"3", -1}, {"5", 1}, {"7", -2}, {"11", 1}, {"13", 4},
                {"17", -2}, {"19", 0}, {"23", -1}, {"29", 0}, {"31", 7}, {"37", 3},
                {"41", -8}, {"43", -6}, {"47", 8}}}};
    nlohmann::json body;
    body["data"] = nlohmann::json::array({rec});
    res.set_content(body.dump(), "application/json");
  });
  int port = srv.bind_to_any_port("127.0.0.1");
  std::thread th([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  std::string base = "http://127.0.0.1:" + std::to_string(port);
  setenv("OVERCONV_LMFDB_URL", base.c_str(), 1);

  EigenData f = fetch_lmfdb("11.2.a.a", 50);
  CHECK(f.level == 11);
  CHECK(f.a(2) == Rat(-2));
  CHECK(f.a(7) == Rat(-2));
  CHECK(f.source == base);

  srv.stop();
  th.join();

  // cache hit replay: identical data with source = "cache", server gone
  EigenData g = fetch_lmfdb("11.2.a.a", 50);
  CHECK(g.source == "cache");
  CHECK(g.level == f.level);
  CHECK(g.hecke == f.hecke);

  // agreement between fetched data and point counts for all good ell <= 47
  EigenData pc = builtin_eigendata("11a1", 50);
  for (const auto& [ell, a] : f.hecke) CHECK(a == pc.a(ell));

  fs::remove_all(cache);
}

TEST_CASE("37a1 fetched fixture agrees with point counts") {
  // fixture values cross-checked by independent brute-force point counts
  std::map<long, long> fixture = {{2, -2}, {3, -3}, {5, -2}, {7, -1}, {11, -5}, {13, -2},
                                  {17, 0}, {19, 0}, {23, 2}, {29, 6}, {31, -4}, {37, -1},
                                  {41, -9}, {43, 2}, {47, -9}};
  EigenData pc = builtin_eigendata("37a1", 50);
  for (const auto& [ell, a] : fixture) CHECK(pc.a(ell) == Rat(a));
}
