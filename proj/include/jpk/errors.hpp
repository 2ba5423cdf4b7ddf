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

#ifndef JPK_ERRORS_HPP
#define JPK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jpk {

  // Every failure raised by the library derives from Error and carries a
  // category so the C layer can map it onto a stable status code.
  enum class ErrorKind {
    InvalidArgument,
    Domain,
    Index,
    UnsupportedOrder,
    Convergence,
    Io,
    Parse
  };

  class Error : public std::runtime_error {
  public:
    Error( ErrorKind k, const std::string& msg )
      : std::runtime_error(msg), m_kind(k) {}
    ErrorKind kind() const noexcept { return m_kind; }
  private:
    ErrorKind m_kind;
  };

  struct InvalidArgument : Error {
    explicit InvalidArgument( const std::string& m ) : Error(ErrorKind::InvalidArgument,m) {}
  };
  struct DomainError : Error {
    explicit DomainError( const std::string& m ) : Error(ErrorKind::Domain,m) {}
  };
  struct IndexError : Error {
    explicit IndexError( const std::string& m ) : Error(ErrorKind::Index,m) {}
  };
  struct UnsupportedOrder : Error {
    explicit UnsupportedOrder( const std::string& m ) : Error(ErrorKind::UnsupportedOrder,m) {}
  };
  struct ConvergenceError : Error {
    explicit ConvergenceError( const std::string& m ) : Error(ErrorKind::Convergence,m) {}
  };
  struct IoError : Error {
    explicit IoError( const std::string& m ) : Error(ErrorKind::Io,m) {}
  };
  struct ParseError : Error {
    explicit ParseError( const std::string& m ) : Error(ErrorKind::Parse,m) {}
  };

}

#endif
