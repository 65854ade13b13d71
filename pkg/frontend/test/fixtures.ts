// Payloads captured from the fixture insight service; keep in sync by
// re-running the runs in the repo's verify recipe.

export const FIXTURES = {
  "runs": {
    "runs": [
      {
        "run_id": "base-run",
        "agent_version": "v1",
        "sample": {
          "name": "adhoc",
          "size": 44,
          "selection": "all_tasks",
          "seed": 0
        },
        "started_at": "2026-08-10T14:50:37.985311Z",
        "finished_at": "2026-08-10T14:50:39.706723Z",
        "total_tasks": 44,
        "successes": 29,
        "task_completion_rate": 65.9091
      },
      {
        "run_id": "fixture-812",
        "agent_version": "fixture",
        "sample": {
          "name": "full",
          "size": 812,
          "selection": "all_tasks",
          "seed": 0
        },
        "started_at": "2026-08-01T00:00:00Z",
        "finished_at": "2026-08-01T01:00:00Z",
        "total_tasks": 812,
        "successes": 501,
        "task_completion_rate": 61.6995
      },
      {
        "run_id": "new-run",
        "agent_version": "v2",
        "sample": {
          "name": "adhoc",
          "size": 44,
          "selection": "all_tasks",
          "seed": 0
        },
        "started_at": "2026-08-10T14:50:39.708809Z",
        "finished_at": "2026-08-10T14:50:41.504488Z",
        "total_tasks": 44,
        "successes": 29,
        "task_completion_rate": 65.9091
      }
    ],
    "total": 3,
    "limit": 50,
    "offset": 0
  },
  "run_base": {
    "run_id": "base-run",
    "agent_version": "v1",
    "sample": {
      "name": "adhoc",
      "size": 44,
      "selection": "all_tasks",
      "seed": 0
    },
    "results": {
      "T009-2": {
        "status": "failure",
        "steps": 12,
        "duration_ms": 55.0,
        "template_id": "T009",
        "level": null,
        "split": null
      },
      "T013-2": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T013",
        "level": null,
        "split": null
      },
      "T014-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T014",
        "level": null,
        "split": null
      },
      "T023-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T023",
        "level": null,
        "split": null
      },
      "T029-1": {
        "status": "failure",
        "steps": 12,
        "duration_ms": 55.0,
        "template_id": "T029",
        "level": null,
        "split": null
      },
      "T032-2": {
        "status": "success",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T032",
        "level": null,
        "split": null
      },
      "T034-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T034",
        "level": null,
        "split": null
      },
      "T035-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T035",
        "level": null,
        "split": null
      },
      "T041-4": {
        "status": "success",
        "steps": 3,
        "duration_ms": 22.0,
        "template_id": "T041",
        "level": null,
        "split": null
      },
      "T044-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T044",
        "level": null,
        "split": null
      },
      "T053-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T053",
        "level": null,
        "split": null
      },
      "T056-4": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T056",
        "level": null,
        "split": null
      },
      "T058-1": {
        "status": "failure",
        "steps": 0,
        "duration_ms": 6.0,
        "template_id": "T058",
        "level": null,
        "split": null
      },
      "T060-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T060",
        "level": null,
        "split": null
      },
      "T071-2": {
        "status": "success",
        "steps": 4,
        "duration_ms": 28.0,
        "template_id": "T071",
        "level": null,
        "split": null
      },
      "T078-2": {
        "status": "failure",
        "steps": 0,
        "duration_ms": 6.0,
        "template_id": "T078",
        "level": null,
        "split": null
      },
      "T084-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T084",
        "level": null,
        "split": null
      },
      "T087-3": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T087",
        "level": null,
        "split": null
      },
      "T090-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T090",
        "level": null,
        "split": null
      },
      "T093-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T093",
        "level": null,
        "split": null
      },
      "T101-2": {
        "status": "success",
        "steps": 4,
        "duration_ms": 28.0,
        "template_id": "T101",
        "level": null,
        "split": null
      },
      "T104-2": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T104",
        "level": null,
        "split": null
      },
      "T105-2": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T105",
        "level": null,
        "split": null
      },
      "T107-4": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T107",
        "level": null,
        "split": null
      },
      "T109-2": {
        "status": "failure",
        "steps": 12,
        "duration_ms": 55.0,
        "template_id": "T109",
        "level": null,
        "split": null
      },
      "T112-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T112",
        "level": null,
        "split": null
      },
      "T116-3": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T116",
        "level": null,
        "split": null
      },
      "T117-3": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T117",
        "level": null,
        "split": null
      },
      "T125-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T125",
        "level": null,
        "split": null
      },
      "T138-3": {
        "status": "failure",
        "steps": 0,
        "duration_ms": 6.0,
        "template_id": "T138",
        "level": null,
        "split": null
      },
      "T140-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T140",
        "level": null,
        "split": null
      },
      "T146-1": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T146",
        "level": null,
        "split": null
      },
      "T147-3": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T147",
        "level": null,
        "split": null
      },
      "T150-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T150",
        "level": null,
        "split": null
      },
      "T163-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T163",
        "level": null,
        "split": null
      },
      "T164-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 14.0,
        "template_id": "T164",
        "level": null,
        "split": null
      },
      "T165-3": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T165",
        "level": null,
        "split": null
      },
      "T170-1": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T170",
        "level": null,
        "split": null
      },
      "T171-4": {
        "status": "success",
        "steps": 3,
        "duration_ms": 22.0,
        "template_id": "T171",
        "level": null,
        "split": null
      },
      "T172-2": {
        "status": "success",
        "steps": 2,
        "duration_ms": 15.0,
        "template_id": "T172",
        "level": null,
        "split": null
      },
      "T173-4": {
        "status": "success",
        "steps": 2,
        "duration_ms": 16.0,
        "template_id": "T173",
        "level": null,
        "split": null
      },
      "T177-1": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T177",
        "level": null,
        "split": null
      },
      "T181-3": {
        "status": "success",
        "steps": 5,
        "duration_ms": 34.0,
        "template_id": "T181",
        "level": null,
        "split": null
      },
      "T187-1": {
        "status": "failure",
        "steps": 2,
        "duration_ms": 22.0,
        "template_id": "T187",
        "level": null,
        "split": null
      }
    },
    "started_at": "2026-08-10T14:50:37.985311Z",
    "finished_at": "2026-08-10T14:50:39.706723Z"
  },
  "metrics_base": {
    "task_completion_rate": 65.9,
    "scenario_completion_rate": 65.9,
    "avg_interactions": 2.75,
    "total_tasks": 44,
    "total_templates": 44,
    "per_level": {}
  },
  "metrics_812": {
    "task_completion_rate": 61.7,
    "scenario_completion_rate": 0.0,
    "avg_interactions": 7.0,
    "total_tasks": 812,
    "total_templates": 190,
    "per_level": {}
  },
  "trajectory": {
    "run_id": "base-run",
    "task_id": "T013-2",
    "total": 16,
    "limit": 500,
    "offset": 0,
    "events": [
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 0,
        "agent": "context",
        "kind": "decision",
        "payload": {
          "notes": null,
          "quality": "clear",
          "refined": "Dismiss any popup, open the orders page, and report the order count.",
          "type": "refined_intent"
        },
        "wall_ms": 1.6830810000101337
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 1,
        "agent": "context",
        "kind": "decision",
        "payload": {
          "fragments": [],
          "provenance": [],
          "type": "context_bundle"
        },
        "wall_ms": 70.31442600055016
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 2,
        "agent": "plan_controller",
        "kind": "decision",
        "payload": {
          "subtasks": [
            {
              "consumes": [],
              "executor": "browser",
              "goal": "Open the orders page past the popup and report the order count",
              "id": "st1",
              "produces": [
                "order_count_text"
              ]
            }
          ],
          "type": "plan"
        },
        "wall_ms": 83.22807699914847
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 3,
        "agent": "plan_controller",
        "kind": "decision",
        "payload": {
          "executor": "browser",
          "inputs": {},
          "subtask_id": "st1",
          "type": "dispatch"
        },
        "wall_ms": 111.70843000036257
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 4,
        "agent": "context",
        "kind": "observation",
        "payload": {
          "budget_used": 5,
          "pages": [
            [
              "https://shop.example/",
              "Demo Shop",
              [
                "Orders",
                "Products",
                "Profile",
                "About"
              ]
            ],
            [
              "https://shop.example/orders",
              "Orders",
              [
                "Home"
              ]
            ],
            [
              "https://shop.example/products",
              "Products",
              [
                "Home"
              ]
            ],
            [
              "https://shop.example/profile",
              "Profile",
              [
                "Home"
              ]
            ],
            [
              "https://shop.example/about",
              "About",
              [
                "Home"
              ]
            ]
          ],
          "site_id": "shop",
          "type": "sitemap"
        },
        "wall_ms": 116.7209310006001
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 5,
        "agent": "browser_planner",
        "kind": "observation",
        "payload": {
          "ax_tree": [
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Demo Shop",
              "node_id": 1,
              "occluded_by": 90,
              "role": "heading",
              "value": null
            },
            {
              "bounds": [
                10,
                40,
                80,
                20
              ],
              "name": "Orders",
              "node_id": 2,
              "occluded_by": 90,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                10,
                70,
                80,
                20
              ],
              "name": "Products",
              "node_id": 3,
              "occluded_by": 90,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                10,
                100,
                80,
                20
              ],
              "name": "Profile",
              "node_id": 4,
              "occluded_by": 90,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                10,
                130,
                80,
                20
              ],
              "name": "About",
              "node_id": 5,
              "occluded_by": 90,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                120,
                40,
                200,
                24
              ],
              "name": "Search products",
              "node_id": 6,
              "occluded_by": 90,
              "role": "textbox",
              "value": null
            },
            {
              "bounds": [
                50,
                50,
                300,
                200
              ],
              "name": "Newsletter signup",
              "node_id": 90,
              "occluded_by": null,
              "role": "dialog",
              "value": null
            },
            {
              "bounds": [
                330,
                55,
                16,
                16
              ],
              "name": "Close",
              "node_id": 91,
              "occluded_by": null,
              "role": "button",
              "value": null
            }
          ],
          "overlay_present": true,
          "screenshot_ref": "sim://shop/home#1",
          "type": "page_observation",
          "url": "https://shop.example/"
        },
        "wall_ms": 125.42861399924732
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 6,
        "agent": "browser_planner",
        "kind": "decision",
        "payload": {
          "answer": null,
          "decision": "act",
          "instruction": "click the Orders link",
          "question": null,
          "type": "browser_decision"
        },
        "wall_ms": 133.8191779996123
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 7,
        "agent": "action_agent",
        "kind": "action",
        "payload": {
          "action": {
            "kind": "click",
            "option": null,
            "target": 91,
            "text": null
          },
          "attempt": 1,
          "dialog": 90,
          "feedback": "dialog dismissed",
          "ok": true,
          "type": "dismiss_overlay"
        },
        "wall_ms": 142.65457699912076
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 8,
        "agent": "action_agent",
        "kind": "action",
        "payload": {
          "action": {
            "kind": "click",
            "option": null,
            "target": 2,
            "text": null
          },
          "attempt": 2,
          "feedback": null,
          "grounded_node": 2,
          "instruction": "click the Orders link",
          "ok": true,
          "type": "browser_action"
        },
        "wall_ms": 148.4771979994548
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 9,
        "agent": "browser_planner",
        "kind": "observation",
        "payload": {
          "ax_tree": [
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Orders",
              "node_id": 10,
              "occluded_by": null,
              "role": "heading",
              "value": null
            },
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Home",
              "node_id": 11,
              "occluded_by": null,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Export orders",
              "node_id": 12,
              "occluded_by": null,
              "role": "button",
              "value": null
            }
          ],
          "overlay_present": false,
          "screenshot_ref": "sim://shop/orders#4",
          "type": "page_observation",
          "url": "https://shop.example/orders"
        },
        "wall_ms": 155.4706589995476
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 10,
        "agent": "browser_planner",
        "kind": "decision",
        "payload": {
          "answer": null,
          "decision": "extract",
          "instruction": null,
          "question": "How many orders are listed?",
          "type": "browser_decision"
        },
        "wall_ms": 166.6921590003767
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 11,
        "agent": "extraction_agent",
        "kind": "result",
        "payload": {
          "answer": "4",
          "citations": [
            "Orders (4)"
          ],
          "question": "How many orders are listed?",
          "type": "extraction",
          "url": "https://shop.example/orders"
        },
        "wall_ms": 180.65591400045378
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 12,
        "agent": "browser_planner",
        "kind": "observation",
        "payload": {
          "ax_tree": [
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Orders",
              "node_id": 10,
              "occluded_by": null,
              "role": "heading",
              "value": null
            },
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Home",
              "node_id": 11,
              "occluded_by": null,
              "role": "link",
              "value": null
            },
            {
              "bounds": [
                0,
                0,
                0,
                0
              ],
              "name": "Export orders",
              "node_id": 12,
              "occluded_by": null,
              "role": "button",
              "value": null
            }
          ],
          "overlay_present": false,
          "screenshot_ref": "sim://shop/orders#6",
          "type": "page_observation",
          "url": "https://shop.example/orders"
        },
        "wall_ms": 193.92453399996157
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 13,
        "agent": "browser_planner",
        "kind": "decision",
        "payload": {
          "answer": "There are 4 orders listed.",
          "decision": "finish",
          "instruction": null,
          "question": null,
          "type": "browser_decision"
        },
        "wall_ms": 212.37033999932464
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 14,
        "agent": "plan_controller",
        "kind": "result",
        "payload": {
          "failure_reason": null,
          "produced": {
            "order_count_text": "There are 4 orders listed."
          },
          "status": "succeeded",
          "subtask_id": "st1",
          "type": "subtask_result"
        },
        "wall_ms": 231.63785399992776
      },
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "seq": 15,
        "agent": "plan_controller",
        "kind": "reflection",
        "payload": {
          "final_answer": "There are 4 orders listed.",
          "reason": null,
          "revision_count": 0,
          "type": "verdict",
          "verdict": "complete"
        },
        "wall_ms": 266.9391010003892
      }
    ]
  },
  "compare": {
    "base_run": "base-run",
    "new_run": "new-run",
    "resolved": [],
    "regressed": [],
    "newly_covered": [],
    "persistent_failures": [
      "T009-2",
      "T029-1",
      "T056-4",
      "T058-1",
      "T078-2",
      "T087-3",
      "T107-4",
      "T109-2",
      "T116-3",
      "T117-3",
      "T138-3",
      "T146-1",
      "T147-3",
      "T177-1",
      "T187-1"
    ],
    "persistent_passes": [
      "T013-2",
      "T014-1",
      "T023-4",
      "T032-2",
      "T034-3",
      "T035-1",
      "T041-4",
      "T044-3",
      "T053-4",
      "T060-4",
      "T071-2",
      "T084-1",
      "T090-1",
      "T093-3",
      "T101-2",
      "T104-2",
      "T105-2",
      "T112-4",
      "T125-3",
      "T140-4",
      "T150-1",
      "T163-3",
      "T164-3",
      "T165-3",
      "T170-1",
      "T171-4",
      "T172-2",
      "T173-4",
      "T181-3"
    ],
    "dropped": []
  },
  "classification_posted": {
    "run_id": "base-run",
    "task_id": "T013-2",
    "label": "popup-obstruction",
    "note": "dialog blocked the link",
    "author": "reviewer",
    "created_at": "2026-08-10T14:50:41.596699Z"
  },
  "classifications": {
    "run_id": "base-run",
    "total": 1,
    "limit": 200,
    "offset": 0,
    "classifications": [
      {
        "run_id": "base-run",
        "task_id": "T013-2",
        "label": "popup-obstruction",
        "note": "dialog blocked the link",
        "author": "reviewer",
        "created_at": "2026-08-10T14:50:41.596699Z"
      }
    ]
  },
  "taxonomy": {
    "labels": [
      "grounding-failure",
      "popup-obstruction",
      "shortlist-miss",
      "variable-loss",
      "reflection-miss",
      "plan-error",
      "extraction-error",
      "harness-error"
    ]
  }
} as const;
