import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globalSetup: ["./tests/serve.setup.mjs"],
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
