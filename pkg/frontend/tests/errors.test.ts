import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";
import { describe, expect, it } from "vitest";

import { ERROR_MESSAGES, messageFor } from "../src/errors.js";

const here = dirname(fileURLToPath(import.meta.url));
const servicePath = join(here, "..", "..", "src", "healthychoice", "service.py");

function serviceErrorCodes(): string[] {
  const source = readFileSync(servicePath, "utf-8");
  const table = source.match(/ERROR_MAP[^=]*=\s*\{([\s\S]*?)\n\}/);
  if (!table) throw new Error("could not locate the service error table");
  const codes = [...table[1].matchAll(/\("([a-z_]+)",\s*\d+\)/g)].map((m) => m[1]);
  if (codes.length === 0) throw new Error("no codes parsed from the service error table");
  return codes;
}

describe("error code rendering", () => {
  it("covers every code in the service mapping table", () => {
    for (const code of serviceErrorCodes()) {
      expect(ERROR_MESSAGES[code], `missing human message for ${code}`).toBeTypeOf("string");
      expect(ERROR_MESSAGES[code].length).toBeGreaterThan(0);
    }
  });

  it("also covers the transport-level codes", () => {
    expect(ERROR_MESSAGES.not_found).toBeTypeOf("string");
    expect(ERROR_MESSAGES.http_error).toBeTypeOf("string");
  });

  it("falls back sensibly for unknown codes", () => {
    expect(messageFor("unmapped_code", "server text")).toBe("server text");
    expect(messageFor("unmapped_code")).toBe("Something went wrong.");
  });
});
