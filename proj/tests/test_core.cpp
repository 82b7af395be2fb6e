#include <deco/basic.hpp>
#include <deco/core.hpp>

#include "support/chains.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace deco;
using namespace deco::basic;

namespace {

struct CoreTest : ::testing::Test {
    LogPtr log = std::make_shared<EventLog>();
    LayerRegistry<IComponent> reg = make_registry(log);
    std::shared_ptr<IComponent> c = std::make_shared<ConcreteComponent>(log);
    CapabilityTable table = make_table();
};

}  // namespace

TEST_F(CoreTest, WrapNestsInListingOrder) {
    auto d1 = wrap(reg, c, "D1");
    EXPECT_EQ(describe_chain(*d1), (std::vector<std::string>{"D1", "Concrete"}));

    auto d12 = wrap(reg, wrap(reg, c, "D2"), "D1");
    EXPECT_EQ(describe_chain(*d12), (std::vector<std::string>{"D1", "D2", "Concrete"}));

    auto d11 = wrap(reg, d1, "D1");
    EXPECT_EQ(describe_chain(*d11), (std::vector<std::string>{"D1", "D1", "Concrete"}));
}

TEST_F(CoreTest, WrapLeavesInnerUntouched) {
    auto d2 = wrap(reg, c, "D2");
    auto d12 = wrap(reg, d2, "D1");
    EXPECT_EQ(describe_chain(*d2), (std::vector<std::string>{"D2", "Concrete"}));
    EXPECT_EQ(get_base(*d12), d2);
}

TEST_F(CoreTest, UnknownKindIsConfigError) {
    EXPECT_THROW(wrap(reg, c, "D9"), ConfigError);
    EXPECT_THROW(wrap(reg, c, "D1", {3}), ConfigError);
}

TEST_F(CoreTest, GetBasePeelsOneLayer) {
    auto chain = chains::build(reg, c, {"D1", "D2"});
    auto once = get_base(*chain);
    EXPECT_EQ(describe_chain(*once), (std::vector<std::string>{"D2", "Concrete"}));
    EXPECT_EQ(get_base(*once), c);
    EXPECT_THROW(get_base(*c), std::invalid_argument);
}

TEST_F(CoreTest, PeelThenCallReachesInnerLayer) {
    // [D2, D1, C]: peeling D2 exposes D1 directly
    auto oo = chains::build(reg, c, {"D2", "D1"});
    auto inner = get_base(*oo);
    auto* d1 = dynamic_cast<Decorator1*>(inner.get());
    ASSERT_NE(d1, nullptr);
    EXPECT_EQ(d1->f1(), "D1.f1");
}

TEST_F(CoreTest, OperationOnBareComponent) {
    c->operation();
    EXPECT_EQ(*log, (EventLog{"Concrete"}));
}

TEST_F(CoreTest, PlainDecoratorJustForwards) {
    auto dc = wrap(reg, c, "Decorator");
    dc->operation();
    EXPECT_EQ(*log, (EventLog{"Concrete"}));
}

TEST_F(CoreTest, OperationForwardsOutermostFirst) {
    chains::build(reg, c, {"D1", "D2"})->operation();
    EXPECT_EQ(*log, (EventLog{"D1", "D2", "Concrete"}));
}

TEST_F(CoreTest, ForwardingProducesDepthPlusOneEvents) {
    for (const auto& kinds : chains::sequences(chains::abstract_kinds(), 3)) {
        log->clear();
        chains::build(reg, c, kinds)->operation();
        auto expected = kinds;
        expected.push_back("Concrete");
        EXPECT_EQ(*log, expected);
    }
}

TEST_F(CoreTest, DescribeChain) {
    EXPECT_EQ(describe_chain(*c), (std::vector<std::string>{"Concrete"}));
    auto chain = chains::build(reg, c, {"D1", "D2"});
    EXPECT_EQ(join_chain(describe_chain(*chain)), "D1|D2|Concrete");
    EXPECT_EQ(describe_chain(*get_base(*chain)), (std::vector<std::string>{"D2", "Concrete"}));
    EXPECT_EQ(chain_depth(*chain), 2u);
    EXPECT_EQ(chain_depth(*c), 0u);
}

TEST_F(CoreTest, SupportsFollowsTable) {
    auto d1 = wrap(reg, c, "D1");
    auto plain = wrap(reg, c, "Decorator");
    EXPECT_TRUE(supports(table, *d1->as_layer(), "f1"));
    EXPECT_FALSE(supports(table, *d1->as_layer(), "f2"));
    for (const auto& cap : {"f1", "f2", "f3", "f4"})
        EXPECT_FALSE(supports(table, *plain->as_layer(), cap));
    // pure
    EXPECT_EQ(supports(table, *d1->as_layer(), "f1"), supports(table, *d1->as_layer(), "f1"));
}

TEST(CapabilityTable, RegistrationIsIdempotentForSameSignature) {
    CapabilityTable t;
    const CapabilityId f4{"f4", feature_signature()};
    t.register_capability(f4, {"D4"});
    EXPECT_NO_THROW(t.register_capability(f4, {"D4"}));
    EXPECT_EQ(t.size(), 1u);
    t.register_capability(f4, {"D4'"});
    EXPECT_TRUE(t.provides("D4", "f4"));
    EXPECT_TRUE(t.provides("D4'", "f4"));
}

TEST(CapabilityTable, ConflictingSignatureRejected) {
    CapabilityTable t;
    t.register_capability({"f4", feature_signature()}, {"D4"});
    EXPECT_THROW(t.register_capability({"f4", Signature{{ValueKind::integer}, ValueKind::unit}}, {"D4"}),
                 RegistrationConflict);
}

TEST(UnsupportedFunctionality, CarriesCapabilityAndChain) {
    UnsupportedFunctionality e("f2", {"D1", "Concrete"});
    EXPECT_EQ(e.capability(), "f2");
    EXPECT_EQ(e.chain(), (std::vector<std::string>{"D1", "Concrete"}));
    EXPECT_STREQ(e.what(), "unsupported functionality: f2 (chain: D1|Concrete)");
}

TEST(Signature, ArgumentCheck) {
    const Signature sig{{ValueKind::character}, ValueKind::unit};
    const std::vector<Value> ok{Value(U'x')};
    const std::vector<Value> wrong_kind{Value(std::int64_t{1})};
    EXPECT_NO_THROW(check_arguments("unread", sig, ok));
    EXPECT_THROW(check_arguments("unread", sig, {}), SignatureError);
    EXPECT_THROW(check_arguments("unread", sig, wrong_kind), SignatureError);
    EXPECT_EQ(describe(sig), "(character) -> unit");
}

// get_base(wrap(x, k)) is x, and describe_chain(wrap(x, k)) = [k] ++ describe_chain(x)
TEST(CoreProperties, PeelLawOnRandomChains) {
    std::mt19937 rng(7);
    auto reg = make_registry();
    const std::vector<std::string> all = {"Decorator", "D1", "D2", "D3", "D4", "D4'"};
    std::uniform_int_distribution<std::size_t> kind(0, all.size() - 1), depth(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::string> kinds(depth(rng));
        for (auto& k : kinds) k = all[kind(rng)];
        auto x = chains::build(reg, std::make_shared<ConcreteComponent>(), kinds);
        const auto& k = all[kind(rng)];
        auto w = wrap(reg, x, k);
        EXPECT_EQ(get_base(*w).get(), x.get());
        auto expected = describe_chain(*x);
        expected.insert(expected.begin(), k);
        EXPECT_EQ(describe_chain(*w), expected);
    }
}
