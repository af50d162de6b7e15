#ifndef BAUM_CLI_HPP
#define BAUM_CLI_HPP

namespace baum {

// Entry point behind the baum binary; also callable from tests.
int run_cli(int argc, const char* const* argv);

}  // namespace baum

#endif
