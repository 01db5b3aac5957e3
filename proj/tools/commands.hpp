#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crofton::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2, kPrecondition = 3 };

struct VerifyOptions {
  std::string curve;
  std::string check = "all";
  std::string method = "both";
  std::int64_t samples = 100000;
  std::string radius = "auto";
  double safety = 2.0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out;
  int threads = 1;
  bool knotted = false;
  std::string invocation;
};

struct GalleryOptions {
  std::string family;
  std::string params;
  std::string emit = "curve-csv";
  std::string out = ".";
  int samples = 512;
};

int run_verify(const VerifyOptions& opt);
int run_gallery(const GalleryOptions& opt);
int run_selftest(bool quick, int threads);

}  // namespace crofton::cli
