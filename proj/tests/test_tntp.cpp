#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>

#include "evplace/net.hpp"
#include "evplace/tntp.hpp"
#include "testutil.hpp"

using namespace evplace;
namespace tu = evplace::testutil;

namespace {

const char* kNet = R"(<NUMBER OF ZONES> 3
<NUMBER OF NODES> 4
<FIRST THRU NODE> 1
<NUMBER OF LINKS> 2
<END OF METADATA>
~ init term capacity length fftime b power speed toll type ;
 1 2 100 6 10 0.15 4 0 0 1 ;
 2 3 120 5.5 8 0.2 2 0 0 1;
)";

}  // namespace

TEST_CASE("network parser reads metadata and rows") {
  PhysicalNetwork net = parse_tntp_net(kNet);
  CHECK(net.num_zones == 3);
  CHECK(net.num_nodes == 4);
  CHECK(net.first_thru_node == 1);
  REQUIRE(net.links.size() == 2);
  CHECK(net.links[0].tail == 1);
  CHECK(net.links[0].head == 2);
  CHECK(net.links[0].capacity == 100.0);
  CHECK(net.links[0].length == 6.0);
  CHECK(net.links[0].t0 == 10.0);
  CHECK(net.links[0].alpha == 0.15);
  CHECK(net.links[0].beta == 4.0);
  // second row glues the semicolon to the last token
  CHECK(net.links[1].capacity == 120.0);
  CHECK(net.links[1].length == 5.5);
}

TEST_CASE("network parser failure modes carry line numbers") {
  CHECK_THROWS_AS(parse_tntp_net("1 2 100 6 10 0.15 4\n"), ParseError);
  try {
    parse_tntp_net("<END OF METADATA>\n1 2 100\n");
    FAIL("short row should throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  // declared link count disagrees with parsed rows
  std::string text(kNet);
  CHECK_THROWS_AS(
      parse_tntp_net(text.substr(0, text.rfind(" 2 3"))), ParseError);
  // node id outside the declared range
  CHECK_THROWS_AS(parse_tntp_net("<NUMBER OF ZONES> 2\n<NUMBER OF NODES> 2\n"
                                 "<END OF METADATA>\n1 5 100 6 10 0.15 4\n"),
                  ParseError);
}

TEST_CASE("network serializer round-trips") {
  PhysicalNetwork net = parse_tntp_net(kNet);
  PhysicalNetwork again = parse_tntp_net(serialize_tntp_net(net));
  CHECK(again.num_zones == net.num_zones);
  CHECK(again.num_nodes == net.num_nodes);
  REQUIRE(again.links.size() == net.links.size());
  for (size_t i = 0; i < net.links.size(); ++i) {
    CHECK(again.links[i].tail == net.links[i].tail);
    CHECK(again.links[i].head == net.links[i].head);
    CHECK(again.links[i].capacity == net.links[i].capacity);
    CHECK(again.links[i].length == net.links[i].length);
    CHECK(again.links[i].t0 == net.links[i].t0);
    CHECK(again.links[i].alpha == net.links[i].alpha);
    CHECK(again.links[i].beta == net.links[i].beta);
  }
}

TEST_CASE("trip parser accumulates entries and checks zones") {
  DemandTable d = parse_tntp_trips(
      "<NUMBER OF ZONES> 3\n<END OF METADATA>\n"
      "Origin 1\n2 : 40.0; 3 : 60.0;\n2 : 10;\n"
      "Origin 2\n1 : 5; 2 : 99;\n");  // 2 -> 2 is intra-zonal, dropped
  CHECK(d.at(1, 2) == doctest::Approx(50.0));
  CHECK(d.at(1, 3) == doctest::Approx(60.0));
  CHECK(d.at(2, 1) == doctest::Approx(5.0));
  CHECK(d.at(2, 2) == 0.0);
  CHECK(d.total() == doctest::Approx(115.0));

  CHECK_THROWS_AS(parse_tntp_trips("<END OF METADATA>\n2 : 40;\n"), ParseError);
  CHECK_THROWS_AS(parse_tntp_trips("<NUMBER OF ZONES> 2\n<END OF METADATA>\n"
                                   "Origin 7\n1 : 4;\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_tntp_trips("<END OF METADATA>\nOrigin 1\n2 : -4;\n"),
                  ParseError);
}

TEST_CASE("candidate CSV wants the exact header") {
  auto sites = parse_candidates_csv("node_id,cost\n2,1\n3,1.5\n");
  REQUIRE(sites.size() == 2);
  CHECK(sites[0].node == 2);
  CHECK(sites[0].cost == 1.0);
  CHECK(sites[1].node == 3);
  CHECK(sites[1].cost == 1.5);
  CHECK_THROWS_AS(parse_candidates_csv("node,cost\n2,1\n"), ParseError);
  CHECK_THROWS_AS(parse_candidates_csv("node_id,cost\n2\n"), ParseError);
}

TEST_CASE("config text applies known keys and rejects unknown ones") {
  InstanceConfig cfg;
  apply_config_text(
      "# comment\nbudget = 3\ncharge_rate=7.5\n\nfw_max_iters = 123\n", cfg);
  CHECK(cfg.budget == 3.0);
  CHECK(cfg.charge_rate == 7.5);
  CHECK(cfg.fw_max_iters == 123);
  CHECK_THROWS_AS(apply_config_text("no_such_key = 1\n", cfg), ParseError);
  CHECK_THROWS_AS(apply_config_text("budget\n", cfg), ParseError);
}

TEST_CASE("loader assembles the shipped corridor instance") {
  std::string base = EVPLACE_DATA_DIR;
  Instance inst = load_instance(base + "/toy_net.tntp", base + "/toy_trips.tntp",
                                base + "/toy_candidates.csv",
                                base + "/toy.config");
  CHECK(inst.net.num_nodes == 3);
  CHECK(inst.net.links.size() == 2);
  REQUIRE(inst.candidates.size() == 1);
  CHECK(inst.candidates[0].node == 2);
  CHECK(inst.demand.total() == doctest::Approx(100.0));
  CHECK(inst.cfg.budget == 1.0);
  CHECK(inst.cfg.battery_capacity == 10.0);
  CHECK(inst.cfg.charge_rate == 6.0);

  CHECK_THROWS_AS(load_instance(base + "/missing.tntp", base + "/toy_trips.tntp",
                                base + "/toy_candidates.csv", ""),
                  std::runtime_error);
}
