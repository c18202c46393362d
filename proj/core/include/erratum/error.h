// Copyright 2026 The Erratum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ERRATUM_ERROR_H_
#define ERRATUM_ERROR_H_

#include <stdexcept>
#include <string>

namespace erratum {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input could not be turned into a tree at all (empty input, no root).
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidNodeError : public Error {
 public:
  using Error::Error;
};

class XPathError : public Error {
 public:
  using Error::Error;
};

// The descriptor is not well formed.
class XPathSyntaxError : public XPathError {
 public:
  using XPathError::XPathError;
};

// The descriptor is valid XPath but outside the natively supported fragment;
// callers should hand it to a full XPath engine.
class UnsupportedXPathError : public XPathError {
 public:
  using XPathError::XPathError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A similarity table was used with trees it was not built from.
class ProvenanceError : public Error {
 public:
  using Error::Error;
};

class MutationError : public Error {
 public:
  using Error::Error;
};

// Connection-level failure. Safe to retry.
class TransportError : public Error {
 public:
  using Error::Error;
};

class HttpStatusError : public Error {
 public:
  HttpStatusError(int status, const std::string& what)
      : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// The archive no longer serves the requested snapshot.
class SnapshotGoneError : public HttpStatusError {
 public:
  using HttpStatusError::HttpStatusError;
};

// Response body did not have the expected shape.
class ResponseFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace erratum

#endif  // ERRATUM_ERROR_H_
