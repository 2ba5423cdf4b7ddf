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

#ifndef JPK_PARALLEL_HPP
#define JPK_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace jpk {

  // Hardware concurrency, capped by the JPK_THREADS environment variable
  // when it holds a positive integer. Never less than 1.
  unsigned worker_count();

  // Runs fn(0..n-1) on up to worker_count() threads. Each index is visited
  // exactly once; the first exception thrown by any call is rethrown after
  // all workers have stopped.
  void parallel_for( std::size_t n, const std::function<void(std::size_t)>& fn );

}

#endif
