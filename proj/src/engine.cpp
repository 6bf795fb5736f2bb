// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/engine.hpp"

#include <stdexcept>
#include <utility>

namespace beaconsim::engine {

void Engine::at(Tick when, std::function<void()> fn) {
  if (when < now_) throw std::logic_error("event scheduled in the past");
  queue_.push(Event{when, next_seq_++, std::move(fn)});
}

bool Engine::step() {
  if (queue_.empty()) return false;
  Event ev = queue_.top();
  queue_.pop();
  now_ = ev.when;
  ev.fn();
  return true;
}

void Engine::run_until(Tick end) {
  while (!stopped_ && !queue_.empty() && queue_.top().when < end) step();
  if (!stopped_ && now_ < end) now_ = end;
}

}  // namespace beaconsim::engine
