#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ddlite/error.hpp"

#define EXPECT_ERRC(stmt, errc)                                               \
    do {                                                                      \
        try {                                                                 \
            stmt;                                                             \
            ADD_FAILURE() << "expected " #errc " from " #stmt;                \
        } catch (const ::ddlite::Error& e_) {                                 \
            EXPECT_EQ(e_.code(), errc) << e_.what();                          \
        }                                                                     \
    } while (0)

inline std::string fixture(const std::string& name) { return std::string(DDLITE_FIXTURES) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
