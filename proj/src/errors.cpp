// errors.cpp -- warning hook plumbing.
#include "uwauth/errors.hpp"

#include <atomic>
#include <iostream>

namespace uwauth {

namespace {

void default_warning_handler(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

std::atomic<WarningHandler> g_handler{&default_warning_handler};

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  if (handler == nullptr) handler = &default_warning_handler;
  return g_handler.exchange(handler);
}

void emit_warning(const std::string& message) {
  g_handler.load()(message);
}

}  // namespace uwauth
