"""Synthetic OpenAPI corpus: 24 themed applications with disjoint domain
vocabularies, verbose source documents (long prose, examples, security,
vendor extensions), and a labeled query set for shortlister evaluation."""

from __future__ import annotations

import json
import random

from ..registry import ApiRegistry, MockServer, MockTransport

# (app_id, title, adjectives, nouns, special action verb + noun)
THEMES = [
    ("hotel-booking", "Hotel Booking", ["deluxe", "nightly"], ["room", "reservation", "guest"], ("book", "room")),
    ("flight-search", "Flight Search", ["nonstop", "red-eye"], ["flight", "itinerary", "layover"], ("board", "flight")),
    ("car-rental", "Car Rental", ["compact", "hybrid"], ["vehicle", "rental", "odometer"], ("reserve", "vehicle")),
    ("fitness-tracker", "Fitness Tracker", ["aerobic", "weekly"], ["workout", "heartrate", "stride"], ("log", "workout")),
    ("recipe-box", "Recipe Box", ["savory", "gluten-free"], ["recipe", "ingredient", "marinade"], ("bake", "recipe")),
    ("pet-clinic", "Pet Clinic", ["feline", "canine"], ["patient", "vaccination", "kennel"], ("vaccinate", "patient")),
    ("library-catalog", "Library Catalog", ["overdue", "hardcover"], ["book", "loan", "shelf"], ("borrow", "book")),
    ("movie-tickets", "Movie Tickets", ["matinee", "premiere"], ["screening", "seat", "trailer"], ("screen", "screening")),
    ("parking-garage", "Parking Garage", ["hourly", "valet"], ["space", "permit", "meter"], ("validate", "permit")),
    ("weather-station", "Weather Station", ["barometric", "hourly"], ["forecast", "sensor", "humidity"], ("calibrate", "sensor")),
    ("stock-broker", "Stock Broker", ["margin", "dividend"], ["portfolio", "ticker", "quote"], ("trade", "ticker")),
    ("crypto-wallet", "Crypto Wallet", ["cold", "custodial"], ["wallet", "token", "ledger"], ("stake", "token")),
    ("insurance-claims", "Insurance Claims", ["actuarial", "deductible"], ["claim", "policy", "adjuster"], ("adjudicate", "claim")),
    ("helpdesk-tickets", "Helpdesk Tickets", ["escalated", "triaged"], ["ticket", "agent", "queue"], ("escalate", "ticket")),
    ("warehouse-inventory", "Warehouse Inventory", ["palletized", "backordered"], ["pallet", "bin", "shipment"], ("restock", "bin")),
    ("fleet-telematics", "Fleet Telematics", ["idling", "geofenced"], ["truck", "route", "fuel"], ("dispatch", "truck")),
    ("smart-home", "Smart Home", ["dimmable", "zoned"], ["thermostat", "bulb", "doorbell"], ("automate", "thermostat")),
    ("classroom-grades", "Classroom Grades", ["graded", "weighted"], ["assignment", "rubric", "semester"], ("grade", "assignment")),
    ("event-planner", "Event Planner", ["catered", "keynote"], ["venue", "attendee", "banquet"], ("cater", "banquet")),
    ("plant-nursery", "Plant Nursery", ["perennial", "succulent"], ["seedling", "cultivar", "greenhouse"], ("repot", "seedling")),
    ("bike-share", "Bike Share", ["docked", "electric"], ["bicycle", "dock", "helmet"], ("undock", "bicycle")),
    ("podcast-studio", "Podcast Studio", ["serialized", "remastered"], ["episode", "transcript", "microphone"], ("publish", "episode")),
    ("tax-filing", "Tax Filing", ["itemized", "amended"], ["return", "deduction", "withholding"], ("amend", "return")),
    ("museum-archive", "Museum Archive", ["curated", "archival"], ["artifact", "exhibit", "provenance"], ("curate", "exhibit")),
]

_LOREM = (
    "This operation participates in the standard request lifecycle, including "
    "conditional caching headers, pagination envelopes, idempotency keys, and "
    "structured error payloads documented in the platform handbook. Clients "
    "should respect retry-after hints and treat unknown response fields as "
    "forward-compatible extensions rather than contract violations."
)


def _entity_schema_name(noun: str) -> str:
    return noun.capitalize()


def _operation(app_id: str, adj: list[str], noun: str, kind: str, verb: str | None = None) -> tuple[str, str, dict]:
    """Returns (path, method, operation object) with verbose metadata."""
    ref = f"#/components/schemas/{_entity_schema_name(noun)}"
    base = {
        "tags": [app_id],
        "deprecated": False,
        "externalDocs": {
            "description": f"Deep dive on {noun} handling",
            "url": f"https://docs.example/{app_id}/{noun}",
        },
        "security": [{"apiKeyAuth": []}],
        "x-internal-routing": {
            "service": f"{app_id}-svc",
            "shard_hint": f"{noun}-primary",
            "timeout_budget_ms": 2500,
        },
        "x-telemetry": {"sample_rate": 0.25, "redact": ["authorization"]},
    }
    if kind == "list":
        op = {
            **base,
            "operationId": f"list_{noun}s",
            "summary": f"List every {adj[0]} {noun} with filters",
            "description": (
                f"Enumerate all {noun} records known to the {app_id} service, "
                f"optionally filtered. Supports {adj[0]} and {adj[1]} views. "
                + _LOREM
            ),
            "parameters": [
                {
                    "name": "page",
                    "in": "query",
                    "required": False,
                    "schema": {"type": "integer"},
                    "description": f"Page number when listing many {noun} records in sequence",
                },
                {
                    "name": "kind",
                    "in": "query",
                    "required": False,
                    "schema": {"type": "string"},
                    "description": f"Restrict to {adj[0]} or {adj[1]} {noun}s only",
                },
            ],
            "responses": {
                "200": {
                    "description": f"A page of {noun}s",
                    "content": {
                        "application/json": {
                            "schema": {
                                "type": "object",
                                "properties": {
                                    "items": {"type": "array", "items": {"$ref": ref}},
                                    "total": {"type": "integer"},
                                },
                            },
                            "examples": {
                                "page1": {
                                    "summary": "First page",
                                    "value": {"items": [], "total": 0},
                                }
                            },
                        }
                    },
                }
            },
        }
        return f"/{noun}s", "get", op
    if kind == "get":
        op = {
            **base,
            "operationId": f"get_{noun}",
            "summary": f"Fetch one {noun} by its identifier",
            "description": (
                f"Retrieve a single {noun} from the {app_id} service including "
                f"its {adj[1]} attributes and audit trail. " + _LOREM
            ),
            "parameters": [
                {
                    "name": f"{noun}_id",
                    "in": "path",
                    "required": True,
                    "schema": {"type": "string"},
                    "description": f"Identifier of the {noun} to fetch from the registry",
                }
            ],
            "responses": {
                "200": {
                    "description": f"The {noun}",
                    "content": {
                        "application/json": {
                            "schema": {"$ref": ref},
                            "examples": {
                                "sample": {"summary": "One record", "value": {"id": "x-1"}}
                            },
                        }
                    },
                }
            },
        }
        return f"/{noun}s/{{{noun}_id}}", "get", op
    if kind == "create":
        op = {
            **base,
            "operationId": f"create_{noun}",
            "summary": f"Create a new {adj[1]} {noun}",
            "description": (
                f"Register a new {noun} with the {app_id} service. The caller "
                f"provides a label and an optional {adj[0]} flag. " + _LOREM
            ),
            "requestBody": {
                "required": True,
                "content": {
                    "application/json": {
                        "schema": {
                            "type": "object",
                            "required": ["label"],
                            "properties": {
                                "label": {
                                    "type": "string",
                                    "description": f"Human-readable label for the new {noun}",
                                },
                                "priority": {
                                    "type": "integer",
                                    "description": f"Scheduling weight among other {noun}s",
                                },
                            },
                        },
                        "examples": {
                            "typical": {
                                "summary": "Typical creation",
                                "value": {"label": "example", "priority": 1},
                            }
                        },
                    }
                },
            },
            "responses": {
                "201": {
                    "description": f"The created {noun}",
                    "content": {"application/json": {"schema": {"$ref": ref}}},
                }
            },
        }
        return f"/{noun}s", "post", op
    # special themed action
    op = {
        **base,
        "operationId": f"{verb}_{noun}",
        "summary": f"{verb.capitalize()} a {noun} ({adj[0]} workflow)",
        "description": (
            f"Run the {verb} workflow against one {noun}. This is the "
            f"signature capability of the {app_id} service and honors the "
            f"{adj[1]} policy set. " + _LOREM
        ),
        "parameters": [
            {
                "name": f"{noun}_id",
                "in": "path",
                "required": True,
                "schema": {"type": "string"},
                "description": f"The {noun} the {verb} workflow applies to",
            }
        ],
        "requestBody": {
            "required": False,
            "content": {
                "application/json": {
                    "schema": {
                        "type": "object",
                        "properties": {
                            "note": {"type": "string", "description": "Operator note"}
                        },
                    }
                }
            },
        },
        "responses": {
            "200": {
                "description": f"Outcome of the {verb} workflow",
                "content": {
                    "application/json": {
                        "schema": {
                            "type": "object",
                            "properties": {
                                "outcome": {"type": "string"},
                                "applied_to": {"type": "string"},
                            },
                        }
                    }
                },
            }
        },
    }
    return f"/{noun}s/{{{noun}_id}}/{verb}", "post", op


def corpus_document(app_id: str) -> str:
    theme = next(t for t in THEMES if t[0] == app_id)
    _, title, adj, nouns, (verb, verb_noun) = theme
    paths: dict[str, dict] = {}
    for noun in nouns:
        for kind in ("list", "get", "create"):
            path, method, op = _operation(app_id, adj, noun, kind)
            paths.setdefault(path, {})[method] = op
    path, method, op = _operation(app_id, adj, verb_noun, "action", verb)
    paths.setdefault(path, {})[method] = op
    schemas = {
        _entity_schema_name(noun): {
            "type": "object",
            "properties": {
                "id": {"type": "string"},
                "label": {"type": "string"},
                "priority": {"type": "integer"},
                "created_at": {"type": "string"},
            },
        }
        for noun in nouns
    }
    doc = {
        "openapi": "3.0.3",
        "info": {
            "title": title,
            "version": "2.4.1",
            "description": (
                f"The {title} service manages {', '.join(nouns)} records and "
                f"runs the {verb} workflow. "
            ),
        },
        "servers": [{"url": f"https://{app_id}.example/api"}],
        "components": {
            "schemas": schemas,
            "securitySchemes": {
                "apiKeyAuth": {"type": "apiKey", "in": "header", "name": "X-Api-Key"}
            },
        },
        "paths": paths,
    }
    return json.dumps(doc, indent=2)


def corpus_app_ids() -> list[str]:
    return [t[0] for t in THEMES]


def build_corpus_registry() -> tuple[ApiRegistry, dict[str, MockServer]]:
    registry = ApiRegistry()
    servers: dict[str, MockServer] = {}
    for app_id in corpus_app_ids():
        manifest = registry.ingest_spec(
            corpus_document(app_id), app_id, f"https://{app_id}.example/api"
        )
        server = MockServer(manifest)
        servers[app_id] = server
        registry.set_transport(app_id, MockTransport(server))
    return registry, servers


def labeled_queries(n: int = 100, seed: int = 7) -> list[tuple[str, str]]:
    """(query, expected tool id) pairs phrased from each operation's own
    vocabulary; vocabularies are disjoint across apps."""
    rng = random.Random(seed)
    queries: list[tuple[str, str]] = []
    templates = {
        "list": "show all the {adj} {noun}s",
        "get": "look up one {noun} by id",
        "create": "create a brand new {adj} {noun}",
        "action": "{verb} the selected {noun}",
    }
    for i in range(n):
        app_id, title, adj, nouns, (verb, verb_noun) = THEMES[i % len(THEMES)]
        kind = rng.choice(["list", "get", "create", "action"])
        if kind == "action":
            noun = verb_noun
            expected = f"{app_id}.{verb}_{noun}"
        else:
            noun = rng.choice(nouns)
            expected = f"{app_id}.{kind}_{noun}" + ("s" if kind == "list" else "")
        query = templates[kind].format(adj=rng.choice(adj), noun=noun, verb=verb)
        queries.append((query, expected))
    return queries
