import { defineConfig } from "vitest/config";

// dev server proxies the API to a locally running `slicebench serve`;
// production build lands in dist/, which that command serves directly
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8337",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "node",
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
