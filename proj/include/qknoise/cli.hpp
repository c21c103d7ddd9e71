// Copyright 2026 The qknoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace qknoise {

// Exit codes: 0 success, 2 config error, 3 data error, 4 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

// Full CLI: subcommands data / kernel / sweep / bounds / regions with
// --config, --seed, --out, --threads. In-process callable so tests can
// exercise exit codes without spawning.
int cli_main(int argc, const char* const* argv);

// Maps the in-flight exception to the exit-code contract above.
int exit_code_for_current_exception();

}  // namespace qknoise
