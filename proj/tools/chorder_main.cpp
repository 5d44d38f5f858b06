// SPDX-License-Identifier: Apache-2.0
#include "chorder/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return chorder::cli::run(argc, argv, std::cout, std::cerr); }
