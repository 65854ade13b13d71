"""Hand-written fixture applications: a shop, a mailer, and three apps with
deliberately disjoint vocabularies for search tests."""

from __future__ import annotations

import json
from typing import Any

from ..registry import ApiRegistry, MockServer, MockTransport


def _doc(title: str, description: str, paths: dict, schemas: dict | None = None) -> str:
    doc = {
        "openapi": "3.0.3",
        "info": {"title": title, "description": description, "version": "1.0.0"},
        "paths": paths,
    }
    if schemas:
        doc["components"] = {"schemas": schemas}
    return json.dumps(doc, indent=2)


def _json_response(schema: Any) -> dict:
    return {"200": {"description": "OK", "content": {"application/json": {"schema": schema}}}}


SHOP_API_DOC = _doc(
    "Demo Shop API",
    "Orders, products, and customer accounts for the demo shop.",
    {
        "/users/{user_id}/orders": {
            "get": {
                "operationId": "list_orders",
                "summary": "List the orders a user has placed",
                "parameters": [
                    {
                        "name": "user_id",
                        "in": "path",
                        "required": True,
                        "schema": {"type": "string"},
                        "description": "User identifier",
                    },
                    {
                        "name": "status",
                        "in": "query",
                        "required": False,
                        "schema": {"type": "string"},
                        "description": "Filter by order status",
                    },
                ],
                "responses": _json_response({"$ref": "#/components/schemas/OrderList"}),
            }
        },
        "/orders/{order_id}": {
            "get": {
                "operationId": "get_order",
                "summary": "Fetch one order with its amount and status",
                "parameters": [
                    {
                        "name": "order_id",
                        "in": "path",
                        "required": True,
                        "schema": {"type": "string"},
                        "description": "Order identifier",
                    }
                ],
                "responses": _json_response({"$ref": "#/components/schemas/Order"}),
            }
        },
        "/orders": {
            "post": {
                "operationId": "create_order",
                "summary": "Place a new order for a user",
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["user_id", "items"],
                                "properties": {
                                    "user_id": {"type": "string", "description": "Buyer"},
                                    "items": {"type": "array", "items": {"type": "string"}},
                                },
                            }
                        }
                    },
                },
                "responses": _json_response({"$ref": "#/components/schemas/Order"}),
            }
        },
    },
    schemas={
        "Order": {
            "type": "object",
            "properties": {
                "id": {"type": "string"},
                "amount": {"type": "number"},
                "status": {"type": "string"},
                "placed_at": {"type": "string"},
            },
        },
        "OrderList": {
            "type": "object",
            "properties": {
                "items": {"type": "array", "items": {"$ref": "#/components/schemas/Order"}},
                "total": {"type": "integer"},
            },
        },
    },
)

MAIL_API_DOC = _doc(
    "Demo Mail API",
    "Send and browse email messages.",
    {
        "/messages": {
            "post": {
                "operationId": "send_mail",
                "summary": "Send an email message to a recipient",
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["to", "body"],
                                "properties": {
                                    "to": {"type": "string", "description": "Recipient address"},
                                    "subject": {"type": "string"},
                                    "body": {"type": "string", "description": "Message text"},
                                },
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "status": {"type": "string"},
                            "message_id": {"type": "string"},
                        },
                    }
                ),
            },
            "get": {
                "operationId": "list_messages",
                "summary": "List sent email messages",
                "parameters": [
                    {
                        "name": "to",
                        "in": "query",
                        "required": False,
                        "schema": {"type": "string"},
                        "description": "Filter by recipient",
                    }
                ],
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "items": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "properties": {
                                        "to": {"type": "string"},
                                        "subject": {"type": "string"},
                                    },
                                },
                            }
                        },
                    }
                ),
            },
        }
    },
)

PAYMENTS_DOC = _doc(
    "Payments",
    "Move money between people: transfers, balances, transaction history.",
    {
        "/transfers": {
            "post": {
                "operationId": "create_transfer",
                "summary": "Transfer money to a friend or contact",
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["to_user", "amount"],
                                "properties": {
                                    "to_user": {"type": "string", "description": "Recipient"},
                                    "amount": {"type": "number", "description": "Money amount"},
                                    "memo": {"type": "string"},
                                },
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "transfer_id": {"type": "string"},
                            "status": {"type": "string"},
                        },
                    }
                ),
            }
        },
        "/balances/{user_id}": {
            "get": {
                "operationId": "get_balance",
                "summary": "Current account balance for a user",
                "parameters": [
                    {
                        "name": "user_id",
                        "in": "path",
                        "required": True,
                        "schema": {"type": "string"},
                        "description": "Account holder",
                    }
                ],
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "user_id": {"type": "string"},
                            "balance": {"type": "number"},
                        },
                    }
                ),
            }
        },
        "/transactions": {
            "get": {
                "operationId": "list_transactions",
                "summary": "Transaction history with amounts and payees",
                "parameters": [
                    {
                        "name": "user_id",
                        "in": "query",
                        "required": False,
                        "schema": {"type": "string"},
                    }
                ],
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "items": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "properties": {
                                        "amount": {"type": "number"},
                                        "payee": {"type": "string"},
                                    },
                                },
                            }
                        },
                    }
                ),
            }
        },
    },
)

GROCERIES_DOC = _doc(
    "Groceries",
    "Browse grocery produce aisles, fill a basket, and check out.",
    {
        "/produce": {
            "get": {
                "operationId": "browse_produce",
                "summary": "Browse grocery produce by aisle",
                "parameters": [
                    {
                        "name": "aisle",
                        "in": "query",
                        "required": False,
                        "schema": {"type": "string"},
                        "description": "Aisle name like dairy or bakery",
                    }
                ],
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "items": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "properties": {
                                        "sku": {"type": "string"},
                                        "aisle": {"type": "string"},
                                    },
                                },
                            }
                        },
                    }
                ),
            }
        },
        "/basket/items": {
            "post": {
                "operationId": "add_basket_item",
                "summary": "Add a grocery item to the shopping basket",
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["sku"],
                                "properties": {
                                    "sku": {"type": "string"},
                                    "quantity": {"type": "number"},
                                },
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {"type": "object", "properties": {"basket_size": {"type": "integer"}}}
                ),
            }
        },
        "/checkout": {
            "post": {
                "operationId": "checkout_basket",
                "summary": "Check out the grocery basket for delivery",
                "requestBody": {
                    "required": False,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "properties": {"delivery_slot": {"type": "string"}},
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {"type": "object", "properties": {"receipt_id": {"type": "string"}}}
                ),
            }
        },
    },
)

MUSIC_DOC = _doc(
    "Music",
    "Search songs, build playlists, follow artists.",
    {
        "/songs": {
            "get": {
                "operationId": "search_songs",
                "summary": "Search songs by artist album or track title",
                "parameters": [
                    {
                        "name": "q",
                        "in": "query",
                        "required": True,
                        "schema": {"type": "string"},
                        "description": "Song or artist query",
                    }
                ],
                "responses": _json_response(
                    {
                        "type": "object",
                        "properties": {
                            "tracks": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "properties": {
                                        "title": {"type": "string"},
                                        "artist": {"type": "string"},
                                    },
                                },
                            }
                        },
                    }
                ),
            }
        },
        "/playlists": {
            "post": {
                "operationId": "create_playlist",
                "summary": "Create a playlist of songs",
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["name"],
                                "properties": {"name": {"type": "string"}},
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {"type": "object", "properties": {"playlist_id": {"type": "string"}}}
                ),
            }
        },
        "/playlists/{playlist_id}/tracks": {
            "post": {
                "operationId": "add_playlist_track",
                "summary": "Add a track to an existing playlist",
                "parameters": [
                    {
                        "name": "playlist_id",
                        "in": "path",
                        "required": True,
                        "schema": {"type": "string"},
                    }
                ],
                "requestBody": {
                    "required": True,
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "required": ["track_id"],
                                "properties": {"track_id": {"type": "string"}},
                            }
                        }
                    },
                },
                "responses": _json_response(
                    {"type": "object", "properties": {"track_count": {"type": "integer"}}}
                ),
            }
        },
    },
)

FIXTURE_DOCS = {
    "shop-api": SHOP_API_DOC,
    "mail-api": MAIL_API_DOC,
    "payments": PAYMENTS_DOC,
    "groceries": GROCERIES_DOC,
    "music": MUSIC_DOC,
}


def shop_orders(user_id: str, count: int) -> list[dict]:
    return [
        {
            "id": f"{user_id}-o{i + 1}",
            "amount": 10.0 + 5 * i,
            "status": "delivered" if i % 2 == 0 else "shipped",
            "placed_at": f"2026-07-{i + 1:02d}",
        }
        for i in range(count)
    ]


SHOP_USERS = {"alice": 5, "bob": 2}


def install_fixture_handlers(servers: dict[str, MockServer], shop_users: dict[str, int] | None = None) -> None:
    users = shop_users if shop_users is not None else SHOP_USERS
    if "shop-api" in servers:
        shop = servers["shop-api"]

        def list_orders(args):
            orders = shop_orders(args["user_id"], users.get(args["user_id"], 0))
            if "status" in args:
                orders = [o for o in orders if o["status"] == args["status"]]
            return {"items": orders, "total": len(orders)}

        def get_order(args):
            order_id = args["order_id"]
            user = order_id.split("-o")[0]
            for order in shop_orders(user, users.get(user, 0)):
                if order["id"] == order_id:
                    return order
            return 404, {"error": f"no order {order_id!r}"}

        shop.set_handler("shop-api.list_orders", list_orders)
        shop.set_handler("shop-api.get_order", get_order)
        shop.set_handler(
            "shop-api.create_order",
            lambda args: {
                "id": f"{args['user_id']}-o99",
                "amount": 0.0,
                "status": "created",
                "placed_at": "2026-08-01",
            },
        )

    if "mail-api" in servers:
        mail = servers["mail-api"]
        sent: list[dict] = []

        def send_mail(args):
            sent.append({"to": args["to"], "subject": args.get("subject", "")})
            return {"status": "sent", "message_id": f"m-{len(sent)}"}

        mail.set_handler("mail-api.send_mail", send_mail)
        mail.set_handler(
            "mail-api.list_messages",
            lambda args: {
                "items": [m for m in sent if ("to" not in args or m["to"] == args["to"])]
            },
        )

    if "payments" in servers:
        servers["payments"].set_handler(
            "payments.get_balance",
            lambda args: {
                "user_id": args["user_id"],
                "balance": 420.5 if args["user_id"] == "u1" else 0.0,
            },
        )


def build_fixture_registry(
    apps: list[str] | None = None, shop_users: dict[str, int] | None = None
) -> tuple[ApiRegistry, dict[str, MockServer]]:
    """Registry over the fixture apps, wired to in-process mock servers."""
    registry = ApiRegistry()
    servers: dict[str, MockServer] = {}
    for app_id in apps or sorted(FIXTURE_DOCS):
        manifest = registry.ingest_spec(
            FIXTURE_DOCS[app_id], app_id, f"https://{app_id}.example"
        )
        server = MockServer(manifest)
        servers[app_id] = server
        registry.set_transport(app_id, MockTransport(server))
    install_fixture_handlers(servers, shop_users)
    return registry, servers
