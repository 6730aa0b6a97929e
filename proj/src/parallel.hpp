#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace casimir::detail
{

// Runs task(i) for i in [0, count) on a small worker pool. Each index writes
// only its own output slot, so results are ordered by index regardless of
// scheduling. The exception of the lowest failing index is rethrown.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task)
{
   if (threads == 0)
   {
      threads = std::max(1u, std::thread::hardware_concurrency());
   }
   threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

   std::vector<std::exception_ptr> errors(count);
   std::atomic<std::size_t> next{0};
   auto worker = [&] {
      for (std::size_t i = next++; i < count; i = next++)
      {
         try
         {
            task(i);
         }
         catch (...)
         {
            errors[i] = std::current_exception();
         }
      }
   };

   if (threads <= 1)
   {
      worker();
   }
   else
   {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t)
      {
         pool.emplace_back(worker);
      }
   }

   for (auto& err : errors)
   {
      if (err)
      {
         std::rethrow_exception(err);
      }
   }
}

} // namespace casimir::detail
