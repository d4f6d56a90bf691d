import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    // dev server talks to a locally running `flowrank serve --port 8080`
    proxy: { "/api": "http://127.0.0.1:8080" },
  },
  build: { outDir: "dist" },
  test: { environment: "jsdom" },
});
