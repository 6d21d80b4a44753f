#ifndef FRGAME_ERROR_HPP
#define FRGAME_ERROR_HPP

#include <stdexcept>
#include <string>

namespace frgame {

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A reward table lookup had no entry for the requested (client, role, subset).
struct ModelIncompleteError : GameError {
  using GameError::GameError;
};

// An operation was asked to enumerate/train more than its cap allows.
struct InstanceTooLargeError : GameError {
  using GameError::GameError;
};

// Config or game file could not be parsed.
struct ParseError : GameError {
  using GameError::GameError;
};

// Local training produced a non-finite loss.
struct DivergedTrainingError : GameError {
  using GameError::GameError;
};

// optimality_gap is undefined because the optimal total utility is <= 0.
struct UndefinedGapError : GameError {
  using GameError::GameError;
};

}  // namespace frgame

#endif  // FRGAME_ERROR_HPP
