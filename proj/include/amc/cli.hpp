/******************************************
Copyright (C) 2026 Authors of amccert, see AUTHORS file

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
***********************************************/

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amc::cli {

/// Exit statuses shared by all subcommands.
enum Exit : int {
    kOk = 0,
    kRejected = 1,  ///< certificate or proof rejected; pac-eval statistical failure
    kUsage = 2,     ///< bad arguments or unparsable input files
    kResource = 3,  ///< randomness exhausted, solver budget, size guards
    kSat = 10,      ///< `solve` found a model
    kUnsat = 20,    ///< `solve` proved unsatisfiability
};

/// Environment variable naming the default directory for proof sidecars.
inline constexpr const char* kProofDirEnv = "AMCCERT_PROOF_DIR";

/// Entry point of the `amccert` binary; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amc::cli
