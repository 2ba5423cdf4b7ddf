////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of jpk (Jacobi-Poisson kernel toolkit)                  //
//                                                                            //
//  Copyright 2026 jpk developers                                             //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#include "jpk/parallel.hpp"
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jpk {

  unsigned worker_count()
  {
    unsigned n = std::max(1u,std::thread::hardware_concurrency());
    if ( const char* env = std::getenv("JPK_THREADS") ) {
      char* end = nullptr;
      const long v = std::strtol(env,&end,10);
      if ( end != env && *end == '\0' && v > 0 )
        n = std::min<unsigned>(n,static_cast<unsigned>(v));
    }
    return n;
  }

  void parallel_for( std::size_t n, const std::function<void(std::size_t)>& fn )
  {
    const unsigned nw = static_cast<unsigned>(std::min<std::size_t>(worker_count(),n));
    if ( nw <= 1 ) {
      for ( std::size_t i = 0; i < n; ++i )
        fn(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first;
    std::mutex mtx;
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if ( i >= n || failed.load() )
          return;
        try {
          fn(i);
        } catch ( ... ) {
          std::lock_guard<std::mutex> lock(mtx);
          if ( !first )
            first = std::current_exception();
          failed = true;
        }
      }
    };
    std::vector<std::thread> pool;
    for ( unsigned w = 0; w+1 < nw; ++w )
      pool.emplace_back(work);
    work();
    for ( auto& th : pool )
      th.join();
    if ( first )
      std::rethrow_exception(first);
  }

}
