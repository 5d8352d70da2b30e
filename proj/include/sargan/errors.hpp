#pragma once

#include <stdexcept>

namespace sargan {

/// Invalid or inconsistent configuration values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signal was passed in the wrong domain (time vs frequency).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix lengths.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File reading/writing failures, bad magic bytes, truncated data.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite losses or gradients encountered during training.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric is undefined for the given inputs (e.g. all-zero reference).
class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse, e.g. a backward pass with a tape from a different forward.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sargan
