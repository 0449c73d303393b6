#pragma once

namespace frirq::cli {

// Exit codes: 0 success, 2 input/parse problem, 3 verification failure,
// 4 numeric/regime failure.
int run(int argc, char** argv);

}  // namespace frirq::cli
