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


#include "bookrec/http_service.h"

#include <cmath>
#include <limits>

#include "bookrec/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace bookrec {

namespace {

using Json = nlohmann::ordered_json;

int HttpStatus(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kNotFound: return 404;
    case ApiErrorCode::kInvalidRating: return 422;
    case ApiErrorCode::kUntrained: return 409;
    case ApiErrorCode::kBadRequest: return 400;
  }
  return 400;
}

void Reply(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, ApiErrorCode code, const std::string& message) {
  Json body;
  body["error"] = {{"code", std::string(ApiErrorCodeName(code))}, {"message", message}};
  Reply(res, body, HttpStatus(code));
}

// Infinite scores (a profile trained only on 10s or only on 1s) become null.
Json Number(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

std::size_t SizeParam(const httplib::Request& req, const std::string& name,
                      std::size_t fallback, std::size_t max = 100000) {
  if (!req.has_param(name)) return fallback;
  const std::string text = req.get_param_value(name);
  std::size_t consumed = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (text.empty() || consumed != text.size() || text.front() == '-') {
    throw ApiError(ApiErrorCode::kBadRequest, "parameter '" + name + "' must be a count");
  }
  return static_cast<std::size_t>(std::min<unsigned long long>(value, max));
}

Json BookSummary(const TokenizedBook& book, const std::map<std::string, int>& ratings) {
  Json j;
  j["id"] = book.id;
  j["title"] = book.title_display;
  Json authors = Json::array();
  for (const auto& [token, count] : book.bag(BagSlot::kAuthors)) authors.push_back(token);
  j["authors"] = std::move(authors);
  const auto it = ratings.find(book.id);
  j["rating"] = it == ratings.end() ? Json(nullptr) : Json(it->second);
  return j;
}

Json RankedJson(const RankedList& entries, const Catalog& catalog, std::size_t first_rank) {
  Json list = Json::array();
  std::size_t rank = first_rank;
  for (const RankedEntry& entry : entries) {
    const TokenizedBook* book = catalog.Find(entry.id);
    Json e;
    e["rank"] = rank++;
    e["id"] = entry.id;
    e["title"] = book ? book->title_display : "";
    e["score"] = Number(entry.score.log_odds);
    e["evidence"] = entry.score.evidence;
    list.push_back(std::move(e));
  }
  return list;
}

}  // namespace

struct HttpService::Impl {
  Impl(Session& s, std::optional<std::filesystem::path> root) : session(s) {
    if (root) server.set_mount_point("/", root->string());
    Register();
  }

  // Runs `handler`, translating library errors into API error bodies.
  template <typename Fn>
  httplib::Server::Handler Wrap(Fn handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const ApiError& e) {
        ReplyError(res, e.code(), e.what());
      } catch (const OutOfVocabulary& e) {
        ReplyError(res, ApiErrorCode::kNotFound, e.what());
      } catch (const InvalidRating& e) {
        ReplyError(res, ApiErrorCode::kInvalidRating, e.what());
      } catch (const nlohmann::json::exception& e) {
        ReplyError(res, ApiErrorCode::kBadRequest, e.what());
      } catch (const std::invalid_argument& e) {
        ReplyError(res, ApiErrorCode::kBadRequest, e.what());
      }
    };
  }

  void Register() {
    server.Get("/status", Wrap([this](const httplib::Request&, httplib::Response& res) {
      const auto snapshot = session.Current();
      Json j;
      j["generation"] = snapshot ? snapshot->generation : 0;
      j["trained"] = snapshot != nullptr;
      j["rating_count"] = session.RatingCount();
      j["catalog_size"] = session.catalog().size();
      j["lambda"] = session.config().lambda;
      j["mask"] = session.config().mask.Names();
      Reply(res, j);
    }));

    server.Get("/books", Wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::string query = req.has_param("q") ? req.get_param_value("q") : "";
      const std::size_t page = std::max<std::size_t>(1, SizeParam(req, "page", 1));
      const std::size_t per_page = std::clamp<std::size_t>(SizeParam(req, "per_page", 20), 1, 500);
      const auto hits = session.catalog().Search(query, StopwordList::Default());
      const auto ratings = session.Ratings();
      Json books = Json::array();
      const std::size_t begin = std::min(hits.size(), (page - 1) * per_page);
      const std::size_t end = std::min(hits.size(), begin + per_page);
      for (std::size_t i = begin; i < end; ++i) books.push_back(BookSummary(*hits[i], ratings));
      Json j;
      j["query"] = query;
      j["total"] = hits.size();
      j["page"] = page;
      j["per_page"] = per_page;
      j["books"] = std::move(books);
      Reply(res, j);
    }));

    server.Get(R"(/books/([^/]+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 const TokenizedBook* book = session.catalog().Find(id);
                 if (book == nullptr) {
                   throw ApiError(ApiErrorCode::kNotFound, "no book with id '" + id + "'");
                 }
                 Json j = BookSummary(*book, session.Ratings());
                 j["book"] = Json::parse(BookToJson(*book));
                 Reply(res, j);
               }));

    server.Post("/ratings", Wrap([this](const httplib::Request& req, httplib::Response& res) {
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const nlohmann::json::exception&) {
        throw ApiError(ApiErrorCode::kBadRequest, "body must be JSON {\"id\":...,\"rating\":...}");
      }
      if (!body.is_object() || !body.contains("id") || !body["id"].is_string() ||
          !body.contains("rating")) {
        throw ApiError(ApiErrorCode::kBadRequest, "body must be {\"id\":...,\"rating\":...}");
      }
      const Json& value = body["rating"];
      int rating = 0;
      if (value.is_number_integer()) {
        const auto r = value.get<long long>();
        rating = (r < 1 || r > 10) ? 0 : static_cast<int>(r);
      } else if (value.is_number_float() && std::floor(value.get<double>()) == value.get<double>()) {
        const double r = value.get<double>();
        rating = (r < 1 || r > 10) ? 0 : static_cast<int>(r);
      } else {
        throw ApiError(ApiErrorCode::kInvalidRating, "rating must be an integer in 1..10");
      }
      if (rating == 0) {
        throw ApiError(ApiErrorCode::kInvalidRating,
                       "rating must be an integer in 1..10, got " + value.dump());
      }
      const std::string id = body["id"].get<std::string>();
      const std::size_t count = session.Rate(id, rating);
      Json j;
      j["id"] = id;
      j["rating"] = rating;
      j["count"] = count;
      Reply(res, j);
    }));

    server.Get("/ratings", Wrap([this](const httplib::Request&, httplib::Response& res) {
      Json list = Json::array();
      const auto ratings = session.Ratings();
      for (const auto& [id, rating] : ratings) list.push_back({{"id", id}, {"rating", rating}});
      Json j;
      j["count"] = ratings.size();
      j["ratings"] = std::move(list);
      Reply(res, j);
    }));

    server.Post("/train", Wrap([this](const httplib::Request&, httplib::Response& res) {
      const std::uint64_t generation = session.Train();
      Json j;
      j["generation"] = generation;
      j["rating_count"] = session.Current()->training.size();
      Reply(res, j);
    }));

    auto ranked = [this](bool bottom) {
      return Wrap([this, bottom](const httplib::Request& req, httplib::Response& res) {
        const std::size_t n = SizeParam(req, "n", 10);
        const auto recs = session.Recommend(n, bottom);
        std::size_t first_rank = 1;
        if (bottom) {
          // Position of the first returned entry in the full ranking.
          const std::size_t candidates = session.catalog().size() - session.RatingCount();
          first_rank = candidates >= recs.entries.size() ? candidates - recs.entries.size() + 1 : 1;
        }
        Json j;
        j["generation"] = recs.generation;
        j["entries"] = RankedJson(recs.entries, session.catalog(), first_rank);
        Reply(res, j);
      });
    };
    server.Get("/recommendations", ranked(false));
    server.Get("/bottom", ranked(true));

    server.Get(R"(/explain/([^/]+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 std::optional<std::size_t> k = kDefaultExplanationRows;
                 if (req.has_param("k") && req.get_param_value("k") == "all") {
                   k.reset();
                 } else {
                   k = SizeParam(req, "k", kDefaultExplanationRows);
                 }
                 const auto result = session.Explain(req.matches[1], k);
                 const RecommendationExplanation& e = result.explanation;
                 Json rows = Json::array();
                 for (const ExplanationRow& row : e.rows) {
                   Json r;
                   r["slot"] = std::string(BagSlotName(row.slot));
                   r["word"] = row.token;
                   r["strength"] = row.strength;
                   r["count"] = row.count;
                   r["influence"] = row.influence;
                   rows.push_back(std::move(r));
                 }
                 Json j;
                 j["generation"] = result.generation;
                 j["id"] = e.book_id;
                 j["title"] = e.title;
                 j["prior_log_odds"] = Number(e.prior_log_odds);
                 j["score"] = Number(e.score.log_odds);
                 j["evidence"] = e.score.evidence;
                 j["rows"] = std::move(rows);
                 Reply(res, j);
               }));

    server.Get(R"(/explain-feature/([^/]+)/([^/]+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string slot_name = req.matches[1];
                 const auto slot = ParseBagSlot(slot_name);
                 if (!slot) {
                   throw ApiError(ApiErrorCode::kBadRequest, "unknown slot '" + slot_name + "'");
                 }
                 const std::size_t k = SizeParam(req, "k", kDefaultFeatureRows);
                 const auto result = session.ExplainFeature(*slot, req.matches[2], k);
                 const FeatureExplanation& e = result.explanation;
                 Json rows = Json::array();
                 for (const FeatureRow& row : e.rows) {
                   Json r;
                   r["id"] = row.id;
                   r["title"] = row.title;
                   r["rating"] = row.rating;
                   r["count"] = row.count;
                   rows.push_back(std::move(r));
                 }
                 Json j;
                 j["generation"] = result.generation;
                 j["slot"] = std::string(BagSlotName(e.slot));
                 j["word"] = e.token;
                 j["strength"] = e.strength;
                 j["rows"] = std::move(rows);
                 Reply(res, j);
               }));
  }

  Session& session;
  httplib::Server server;
};

HttpService::HttpService(Session& session, std::optional<std::filesystem::path> web_root)
    : impl_(std::make_unique<Impl>(session, std::move(web_root))) {}

HttpService::~HttpService() = default;

bool HttpService::Listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpService::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpService::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpService::Stop() { impl_->server.stop(); }

void HttpService::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace bookrec
