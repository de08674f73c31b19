import { defineConfig, type Plugin } from "vitest/config";

// Source files import each other with .js suffixes (native browser ESM);
// map those back to the .ts sources when vitest transforms them.
const tsFromJs: Plugin = {
  name: "ts-from-js-suffix",
  enforce: "pre",
  async resolveId(source, importer) {
    if (importer && /^\.\.?\//.test(source) && source.endsWith(".js")) {
      const asTs = source.slice(0, -3) + ".ts";
      const resolved = await this.resolve(asTs, importer, { skipSelf: true });
      if (resolved) return resolved;
    }
    return null;
  },
};

export default defineConfig({
  plugins: [tsFromJs],
  test: {
    environment: "happy-dom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 15000,
    hookTimeout: 60000,
  },
});
