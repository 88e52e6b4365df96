#pragma once

namespace omchaos {

// Exit codes: 0 success, 2 precondition violation, 3 numerical divergence,
// 4 insufficient data; 1 for anything else.
int cli_main(int argc, const char* const* argv);

}  // namespace omchaos
