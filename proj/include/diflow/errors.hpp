#pragma once

#include <stdexcept>
#include <string>

namespace diflow {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- poset construction / moves ----
struct cycle_error final : error { using error::error; };
struct unknown_label final : error { using error::error; };
struct invalid_size final : error { using error::error; };
struct not_a_cover final : error { using error::error; };
struct label_clash final : error { using error::error; };
struct not_removable final : error { using error::error; };
struct not_bounded final : error { using error::error; };
struct not_monotone final : error { using error::error; };
struct empty_poset final : error { using error::error; };

// ---- flow construction / operations ----
struct endpoint_error final : error { using error::error; };
struct associativity_error final : error { using error::error; };
struct missing_composite final : error { using error::error; };
struct unknown_state final : error { using error::error; };
struct loop_error final : error { using error::error; };
struct morphism_error final : error { using error::error; };

// ---- presentations ----
struct cyclic_presentation final : error { using error::error; };
struct endpoint_mismatch final : error { using error::error; };
struct unknown_edge final : error { using error::error; };

// ---- T-homotopy ----
struct not_in_class_t final : error { using error::error; };
struct not_a_subdivision final : error { using error::error; };

// ---- text formats / CLI ----
struct parse_error final : error { using error::error; };
struct validation_error final : error { using error::error; };

} // namespace diflow
