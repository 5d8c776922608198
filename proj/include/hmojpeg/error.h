// Copyright 2026 The hmojpeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMOJPEG_ERROR_H_
#define HMOJPEG_ERROR_H_

#include <stdexcept>
#include <string>

namespace hmojpeg {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside the domain of the operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

// An input image is in a format we do not read.
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

enum class SchemaErrorKind {
  kParse,
  kMissingField,
  kWrongType,
  kChannelCount,
  kChannelLength,
  kNegativeValue,
  kNonFinite,
};

// A sensitivity interchange document does not follow the schema.
class SchemaError : public Error {
 public:
  SchemaError(SchemaErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  SchemaErrorKind kind() const { return kind_; }

 private:
  SchemaErrorKind kind_;
};

enum class DecodeErrorKind {
  kNotJpeg,
  kTruncated,
  kBadMarker,
  kUnsupported,
  kBadTable,
  kBadHuffmanCode,
  kBadStuffing,
  kBadCoefficient,
  kMissingTable,
};

// The bitstream handed to the decoder is malformed or outside the
// supported baseline subset.
class DecodeError : public Error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  DecodeErrorKind kind() const { return kind_; }

 private:
  DecodeErrorKind kind_;
};

}  // namespace hmojpeg

#endif  // HMOJPEG_ERROR_H_
