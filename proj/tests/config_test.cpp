#include "instances.hpp"
#include "ofdef/error.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <functional>

using namespace ofdef;
using namespace ofdef::testing;

namespace {

Json golden_json() { return read_json_file(instance_path("golden_sqrt5.json")); }

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(Config, CuratedInstanceLoads)
{
    const auto& inst = golden_config();
    EXPECT_EQ(inst.name, "golden-sqrt5");
    EXPECT_EQ(inst.r, 2);
    EXPECT_EQ(inst.ell, 3);
    EXPECT_EQ(inst.c, 4);
    EXPECT_EQ(inst.c_prime, Rat(1, 2));
    EXPECT_EQ(inst.top()->degree(), 2u);
    EXPECT_EQ(inst.base()->degree(), 1u);
    EXPECT_TRUE(validate_instance(inst).passed());
}

TEST(Config, ShippedConfigsValidate)
{
    EXPECT_TRUE(validate_instance(bare_generator_config()).passed());
    EXPECT_TRUE(validate_instance(gaussian_config()).passed());
}

TEST(Config, RoundTrip)
{
    const Json j = instance_to_json(golden_config());
    const RankOneInstance back = instance_from_json(j);
    EXPECT_EQ(instance_to_json(back), j);
}

TEST(Config, FloatLiteralIsRejectedWithPath)
{
    Json j = golden_json();
    j["constants"]["c_prime"] = 0.5;
    try {
        instance_from_json(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("config.constants.c_prime"), std::string::npos) << e.what();
    }
    Json g = golden_json();
    g["generator"]["x"][0] = 3.0;
    EXPECT_EQ(kind_of([&] { instance_from_json(g); }), ErrorKind::Parse);
}

TEST(Config, StructuralErrors)
{
    Json j = golden_json();
    j["schema"] = "ofdef.instance/0";
    EXPECT_EQ(kind_of([&] { instance_from_json(j); }), ErrorKind::Parse);
    Json k = golden_json();
    k.erase("curve");
    EXPECT_EQ(kind_of([&] { instance_from_json(k); }), ErrorKind::Parse);
    Json l = golden_json();
    l["r"] = 0;
    EXPECT_EQ(kind_of([&] { instance_from_json(l); }), ErrorKind::Parse);
    Json m = golden_json();
    m["generator"]["x"] = Json::array({"3"});
    EXPECT_EQ(kind_of([&] { instance_from_json(m); }), ErrorKind::Parse);
}

TEST(Config, TorsionNotDividingRFailsValidation)
{
    Json j = golden_json();
    j["torsion_order"] = 3;
    const RankOneInstance inst = instance_from_json(j);
    const ValidationReport rep = validate_instance(inst);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("r-divisible-by-torsion")->passed);
    EXPECT_EQ(kind_of([&] {
                  auto path = std::string(::testing::TempDir()) + "/bad_torsion.json";
                  std::ofstream(path) << j.dump();
                  load_instance(path);
              }),
              ErrorKind::Validation);
}

TEST(Config, MissingProvenanceFailsValidation)
{
    Json j = golden_json();
    j["provenance"].erase("rank");
    EXPECT_FALSE(validate_instance(instance_from_json(j)).find("provenance-recorded")->passed);
    Json k = golden_json();
    k["provenance"]["torsion_order"] = "";
    EXPECT_FALSE(validate_instance(instance_from_json(k)).find("provenance-recorded")->passed);
}

TEST(Config, OffCurveGeneratorFailsValidation)
{
    Json j = golden_json();
    j["generator"]["y"] = Json::array({"4", "0"});
    EXPECT_FALSE(validate_instance(instance_from_json(j)).find("on-curve")->passed);
}
