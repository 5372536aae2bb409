// Copyright 2026 The Bookrec Authors.
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


#ifndef BOOKREC_HTTP_SERVICE_H_
#define BOOKREC_HTTP_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "bookrec/session.h"

namespace bookrec {

// JSON-over-HTTP facade for a Session.
//
//   GET  /books?q=&page=&per_page=     search (empty query lists the catalog)
//   GET  /books/{id}
//   POST /ratings                      {"id": "...", "rating": 7}
//   GET  /ratings
//   POST /train
//   GET  /recommendations?n=10
//   GET  /bottom?n=10
//   GET  /explain/{id}?k=20            k=all for every row
//   GET  /explain-feature/{slot}/{token}?k=5
//   GET  /status
//
// Errors are {"error":{"code":"not_found|invalid_rating|untrained|bad_request",
// "message":"..."}} with status 404, 422, 409 and 400 respectively.
class HttpService {
 public:
  explicit HttpService(Session& session,
                       std::optional<std::filesystem::path> web_root = std::nullopt);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Blocks until Stop().
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it (-1 on failure); then call
  // ListenAfterBind() to serve.
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bookrec

#endif  // BOOKREC_HTTP_SERVICE_H_
