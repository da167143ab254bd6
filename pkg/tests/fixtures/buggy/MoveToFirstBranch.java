package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class MoveToFirstBranch {
    public void showFirstEntry(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT name FROM entries", null);
        if (c.moveToFirst()) {
            render(c.getString(0));
            c.close();
        }
    }

    private void render(String name) {
    }
}
