// Starter criteria the cockpit opens with: the same tree the engine ships as
// its default config, with neutral all-ones judgments for the user to edit.

import type { CriteriaConfig } from "./types.js";

const ones = (n: number): number[][] =>
  Array.from({ length: n }, () => Array<number>(n).fill(1));

export const DEFAULT_CRITERIA: CriteriaConfig = {
  tree: {
    id: "quality",
    name: "Component quality",
    children: [
      {
        id: "functional",
        name: "Functional capability",
        children: [
          { id: "suitability", name: "Suitability" },
          { id: "accuracy", name: "Accuracy" },
          { id: "interoperability", name: "Interoperability" },
        ],
      },
      {
        id: "reliability",
        name: "Reliability",
        children: [
          { id: "maturity", name: "Maturity" },
          { id: "fault_tolerance", name: "Fault tolerance" },
          { id: "recoverability", name: "Recoverability" },
        ],
      },
      {
        id: "usability",
        name: "Usability",
        children: [
          { id: "understandability", name: "Understandability" },
          { id: "learnability", name: "Learnability" },
          { id: "operability", name: "Operability" },
        ],
      },
      {
        id: "security",
        name: "Security",
        children: [
          { id: "confidentiality", name: "Confidentiality" },
          { id: "integrity", name: "Integrity" },
        ],
      },
      {
        id: "maintainability",
        name: "Maintainability",
        children: [
          { id: "analyzability", name: "Analyzability" },
          { id: "changeability", name: "Changeability" },
          { id: "testability", name: "Testability" },
        ],
      },
    ],
  },
  matrices: {
    quality: ones(5),
    functional: ones(3),
    reliability: ones(3),
    usability: ones(3),
    security: ones(2),
    maintainability: ones(3),
  },
};
