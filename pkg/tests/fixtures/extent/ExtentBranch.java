package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class ExtentBranch {
    public void maybeClose(SQLiteDatabase db, boolean keepOpen) {
        Cursor c = db.rawQuery("SELECT id FROM rows", null);
        if (!keepOpen) {
            c.close();
        }
    }
}
