#pragma once

// JSON-over-HTTP front end for Service. Routes:
//   POST /sessions                {L, Lp, humanSide}
//   GET  /sessions/{id}
//   POST /sessions/{id}/moves     {move}
//   GET  /fixtures
// Errors come back as {error, detail}.

#include <functional>
#include <string>

#include <httplib.h>

#include "service.hpp"

namespace wlab
{
  inline int http_status(ErrorCode c)
  {
    switch (c)
      {
      case ErrorCode::UnknownSession: return 404;
      case ErrorCode::SessionFinished: return 409;
      default: return 400;
      }
  }

  namespace detail
  {
    inline void reply(httplib::Response& res, const std::function<json()>& body)
    {
      try
        {
          res.set_content(body().dump(), "application/json");
        }
      catch (const Error& e)
        {
          res.status = http_status(e.code());
          res.set_content(error_json(e).dump(), "application/json");
        }
    }

    inline json body_json(const httplib::Request& req)
    {
      json j = json::parse(req.body, nullptr, false);
      if (j.is_discarded())
        fail(ErrorCode::ParseError, "request body is not JSON");
      return j;
    }
  }

  /// Registers the API routes on `srv`; `svc` must outlive it.
  inline void install_routes(httplib::Server& srv, Service& svc)
  {
    srv.Post("/sessions", [&svc](const httplib::Request& req, httplib::Response& res)
    {
      detail::reply(res, [&] { return svc.create_session(detail::body_json(req)); });
    });
    srv.Get(R"(/sessions/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res)
    {
      detail::reply(res, [&] { return svc.get_session(req.matches[1]); });
    });
    srv.Post(R"(/sessions/([^/]+)/moves)",
             [&svc](const httplib::Request& req, httplib::Response& res)
    {
      detail::reply(res, [&] { return svc.post_move(req.matches[1], detail::body_json(req)); });
    });
    srv.Get("/fixtures", [&svc](const httplib::Request&, httplib::Response& res)
    {
      detail::reply(res, [&] { return svc.fixtures_list(); });
    });
  }
}
