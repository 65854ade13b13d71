"""JSON-schema descriptors for every structured decision the agents request."""

from __future__ import annotations

IDENT_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"

PLAN_SCHEMA = {
    "type": "object",
    "required": ["subtasks"],
    "properties": {
        "subtasks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["goal", "executor"],
                "properties": {
                    "id": {"type": "string"},
                    "goal": {"type": "string", "minLength": 1},
                    "executor": {"enum": ["browser", "api"]},
                    "consumes": {"type": "array", "items": {"type": "string", "pattern": IDENT_PATTERN}},
                    "produces": {"type": "array", "items": {"type": "string", "pattern": IDENT_PATTERN}},
                    "loop": {
                        "type": "object",
                        "required": ["list", "alias"],
                        "properties": {
                            "list": {"type": "string", "pattern": IDENT_PATTERN},
                            "alias": {"type": "string", "pattern": IDENT_PATTERN},
                        },
                    },
                },
            },
        }
    },
}

CONCLUDE_SCHEMA = {
    "type": "object",
    "required": ["verdict"],
    "properties": {
        "verdict": {"enum": ["complete", "replan", "abort"]},
        "final_answer": {"type": "string"},
        "reason": {"type": "string"},
        "subtasks": PLAN_SCHEMA["properties"]["subtasks"],
    },
}

SHORTLIST_SCHEMA = {
    "type": "object",
    "required": ["tool_ids"],
    "properties": {"tool_ids": {"type": "array", "items": {"type": "string"}}},
}

PROGRAM_SCHEMA = {
    "type": "object",
    "required": ["program"],
    "properties": {"program": {"type": "string", "minLength": 1}},
}

REFLECT_SCHEMA = {
    "type": "object",
    "required": ["revision"],
    "properties": {
        "revision": {"enum": ["retry_program", "reshortlist", "give_up"]},
        "hint": {"type": "string"},
        "reason": {"type": "string"},
    },
}

BROWSER_DECISION_SCHEMA = {
    "type": "object",
    "required": ["decision"],
    "properties": {
        "decision": {"enum": ["act", "extract", "finish"]},
        "instruction": {"type": "string"},
        "question": {"type": "string"},
        "answer": {"type": "string"},
        "success": {"type": "boolean"},
    },
}

GROUND_CHOICE_SCHEMA = {
    "type": "object",
    "required": ["node_id"],
    "properties": {"node_id": {"type": ["integer", "null"]}},
}

JUDGE_SCHEMA = {
    "type": "object",
    "required": ["verdict"],
    "properties": {
        "verdict": {"enum": ["approve", "revise"]},
        "hint": {"type": "string"},
    },
}

EXTRACT_SCHEMA = {
    "type": "object",
    "required": ["found"],
    "properties": {
        "found": {"type": "boolean"},
        "answer": {"type": "string"},
        "citations": {"type": "array", "items": {"type": "string"}},
    },
}

PARAPHRASE_SCHEMA = {
    "type": "object",
    "required": ["quality", "refined"],
    "properties": {
        "quality": {"enum": ["clear", "paraphrased", "ambiguous"]},
        "refined": {"type": "string"},
        "notes": {"type": "string"},
    },
}
