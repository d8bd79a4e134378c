#include <gtest/gtest.h>

#include "properties.hpp"

TEST(Properties, AllHold) {
    for (const auto& o : holo::props::all(100))
        EXPECT_TRUE(o.ok()) << o.name << ": " << o.passed << "/" << o.total << " " << o.first_failure;
}
