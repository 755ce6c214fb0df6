// Runs a callable on a thread with a large stack.  Derivations and formulae
// are deep trees; recursive construction, parsing and destruction of inputs
// in the 10^5-unit range needs more headroom than the default thread stack.

#ifndef DTSA_UTIL_HPP
#define DTSA_UTIL_HPP

#include <pthread.h>

#include <exception>
#include <functional>
#include <stdexcept>

namespace dtsa {

inline constexpr std::size_t kDeepStackBytes = std::size_t{512} << 20;

namespace detail {
struct StackCall {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

inline void* stack_trampoline(void* arg) {
  auto* call = static_cast<StackCall*>(arg);
  try {
    (*call->fn)();
  } catch (...) {
    call->error = std::current_exception();
  }
  return nullptr;
}
}  // namespace detail

inline void run_with_stack(std::size_t stack_bytes,
                           const std::function<void()>& fn) {
  pthread_attr_t attr;
  if (pthread_attr_init(&attr) != 0)
    throw std::runtime_error("pthread_attr_init failed");
  pthread_attr_setstacksize(&attr, stack_bytes);
  detail::StackCall call{&fn, nullptr};
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, detail::stack_trampoline, &call);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("pthread_create failed");
  pthread_join(thread, nullptr);
  if (call.error) std::rethrow_exception(call.error);
}

inline void run_deep(const std::function<void()>& fn) {
  run_with_stack(kDeepStackBytes, fn);
}

}  // namespace dtsa

#endif  // DTSA_UTIL_HPP
